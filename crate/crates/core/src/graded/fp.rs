//! Dense linear algebra over F_p on `u64` residues.

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] % p != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let k = inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x % p * k % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] % p != 0 {
                let f = rows[i][c] % p;
                for j in 0..rows[i].len() {
                    rows[i][j] = (rows[i][j] % p + (p - f) * rows[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub(crate) fn rank(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> usize {
    rref(&mut rows, cols, p).len()
}

/// Basis of `{x : A x = 0}` for `A` with `cols` columns, together with the
/// free columns: basis vector `t` is 1 at `free[t]` and 0 at the other free
/// columns, so the coordinates of any solution are its free entries.
pub(crate) fn nullspace(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let pivots = rref(&mut rows, cols, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[r][f] % p) % p;
            }
            v
        })
        .collect();
    (basis, free)
}
