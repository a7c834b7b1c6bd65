//! Exact matrix algorithms: row reduction over fields, Hermite and Smith
//! forms over Z, linear solving and kernels over every supported ring.

mod int;
mod matrix;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub use matrix::ExactMatrix;

use crate::error::{Error, Result};
use crate::exact::Ring;
use int::IntMat;

/// Smith form `P*A*Q = D` of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub d: ExactMatrix,
    pub p: ExactMatrix,
    pub q: ExactMatrix,
    /// Inverse of `p`, kept because module normal forms map back through it.
    pub p_inv: ExactMatrix,
    /// Nonzero diagonal entries of `d`, positive, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Row echelon data returned by [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub r: ExactMatrix,
    pub pivots: Vec<usize>,
    pub t: ExactMatrix,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn require_field(a: &ExactMatrix) -> Result<()> {
    if a.ring().is_field() {
        Ok(())
    } else {
        Err(Error::WrongRing {
            expected: "a field (Q or Fp)",
            got: a.ring().to_string(),
        })
    }
}

fn require_integer(a: &ExactMatrix) -> Result<()> {
    if a.ring() == Ring::Integer {
        Ok(())
    } else {
        Err(Error::WrongRing {
            expected: "Z",
            got: a.ring().to_string(),
        })
    }
}

/// Reduced row echelon form `T*A = R` over Q or F_p.
pub fn rref(a: &ExactMatrix) -> Result<Rref> {
    require_field(a)?;
    let ring = a.ring();
    let (rows, cols) = a.shape();
    let mut r = a.clone();
    let mut t = ExactMatrix::identity(ring, rows);
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        if row == rows {
            break;
        }
        let Some(pr) = (row..rows).find(|&i| !r.get(i, c).is_zero()) else {
            continue;
        };
        if pr != row {
            for m in [&mut r, &mut t] {
                for j in 0..m.cols() {
                    let x = m.get(row, j).clone();
                    let y = m.get(pr, j).clone();
                    m.set(row, j, y);
                    m.set(pr, j, x);
                }
            }
        }
        let inv = r.get(row, c).invert().expect("nonzero field element");
        for m in [&mut r, &mut t] {
            for j in 0..m.cols() {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
        }
        for i in 0..rows {
            if i == row || r.get(i, c).is_zero() {
                continue;
            }
            let k = r.get(i, c).clone();
            for m in [&mut r, &mut t] {
                for j in 0..m.cols() {
                    let v = m.get(i, j) - &(&k * m.get(row, j));
                    m.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    Ok(Rref { r, pivots, t })
}

fn from_int_mat(m: &IntMat<BigInt>) -> ExactMatrix {
    ExactMatrix::from_bigints(Ring::Integer, m.rows, m.cols, &m.data)
}

fn int_parts(a: &ExactMatrix) -> Vec<BigInt> {
    a.to_bigints().expect("integer entries")
}

/// Row-style Hermite normal form `U*A = H` over Z.
pub fn hnf(a: &ExactMatrix) -> Result<(ExactMatrix, ExactMatrix)> {
    require_integer(a)?;
    let (rows, cols) = a.shape();
    let (h, u) = int::with_fast_path(
        rows,
        cols,
        &int_parts(a),
        |m| int::hnf(m).map(|(h, u)| (int::widen(h), int::widen(u))),
        |m| int::hnf(m).expect("BigInt arithmetic cannot overflow"),
    );
    Ok((from_int_mat(&h), from_int_mat(&u)))
}

/// Smith normal form over Z. Deterministic for fixed input.
pub fn snf(a: &ExactMatrix) -> Result<SnfResult> {
    require_integer(a)?;
    let (rows, cols) = a.shape();
    let parts = int::with_fast_path(
        rows,
        cols,
        &int_parts(a),
        |m| {
            int::smith(m).map(|s| int::SmithParts {
                d: int::widen(s.d),
                p: int::widen(s.p),
                p_inv: int::widen(s.p_inv),
                q: int::widen(s.q),
                rank: s.rank,
            })
        },
        |m| int::smith(m).expect("BigInt arithmetic cannot overflow"),
    );
    let invariant_factors = (0..parts.rank).map(|i| parts.d.at(i, i).clone()).collect();
    Ok(SnfResult {
        d: from_int_mat(&parts.d),
        p: from_int_mat(&parts.p),
        q: from_int_mat(&parts.q),
        p_inv: from_int_mat(&parts.p_inv),
        invariant_factors,
    })
}

/// Determinant of a square integer matrix (fraction-free elimination).
pub fn determinant(a: &ExactMatrix) -> Result<BigInt> {
    require_integer(a)?;
    if !a.is_square() {
        return Err(Error::shape("determinant of a non-square matrix"));
    }
    let n = a.rows();
    let mut m = int_parts(a);
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k * n + k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            for j in 0..n {
                m.swap(k * n + j, s * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                m[i * n + j] = v / &prev;
            }
        }
        prev = m[k * n + k].clone();
    }
    Ok(if n == 0 { sign } else { sign * &m[n * n - 1] })
}

/// Basis (row vectors) of the lattice spanned by the columns of `gens`,
/// in Hermite form.
fn lattice_basis(rows: usize, gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let flat: Vec<BigInt> = gens.iter().flatten().cloned().collect();
    let (h, _) = int::with_fast_path(
        gens.len(),
        rows,
        &flat,
        |m| int::hnf(m).map(|(h, u)| (int::widen(h), int::widen(u))),
        |m| int::hnf(m).expect("BigInt arithmetic cannot overflow"),
    );
    (0..h.rows)
        .map(|i| (0..h.cols).map(|j| h.at(i, j).clone()).collect::<Vec<_>>())
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Generators of the homogeneous solution lattice of `A x = 0` in
/// `Z^cols` (over Z/n, of the lifted system with `n·e_i` adjoined).
fn homogeneous_generators(a: &ExactMatrix) -> Vec<Vec<BigInt>> {
    let (rows, cols) = a.shape();
    let modulus = match a.ring() {
        Ring::Integer => None,
        Ring::Modular(n) | Ring::Prime(n) => Some(n),
        Ring::Rational => unreachable!("fields are solved by row reduction"),
    };
    let lifted = a.cast(Ring::Integer).unwrap();
    let sys = match modulus {
        None => lifted,
        Some(n) => {
            let m = ExactMatrix::identity(Ring::Integer, rows).scale(&Ring::Integer.from_i64(n as i64));
            ExactMatrix::hstack(Ring::Integer, rows, &[&lifted, &m]).unwrap()
        }
    };
    let s = snf(&sys).expect("integer matrix");
    let mut gens: Vec<Vec<BigInt>> = (s.rank()..sys.cols())
        .map(|j| (0..cols).map(|i| s.q.get(i, j).to_bigint().unwrap()).collect())
        .collect();
    if let Some(n) = modulus {
        for i in 0..cols {
            let mut e = vec![BigInt::zero(); cols];
            e[i] = BigInt::from(n);
            gens.push(e);
        }
    }
    gens
}

/// Integer solutions of `A x = b` for each `b`, `A` row-major
/// `rows × cols`; reduced as in [`solve`]. `None` when inconsistent.
pub(crate) fn solve_systems(rows: usize, cols: usize, a: &[BigInt], rhs: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    int::solve_systems_big(rows, cols, a, None, rhs)
}

/// One solution `X` of `A X = B`, column by column, or `None` when the
/// system is inconsistent.
///
/// Over a field free variables are set to zero. Over Z and Z/n the
/// solution is reduced against the Hermite basis of the homogeneous
/// solution lattice, which makes it the lexicographically least
/// non-negative representative over Z/n.
pub fn solve(a: &ExactMatrix, b: &ExactMatrix) -> Result<Option<ExactMatrix>> {
    if a.ring() != b.ring() || a.rows() != b.rows() {
        return Err(Error::shape(format!(
            "system {}x{} over {} with right side {}x{} over {}",
            a.rows(),
            a.cols(),
            a.ring(),
            b.rows(),
            b.cols(),
            b.ring()
        )));
    }
    let ring = a.ring();
    let cols = a.cols();
    let mut out = ExactMatrix::zeros(ring, cols, b.cols());
    if ring.is_field() {
        let aug = ExactMatrix::hstack(ring, a.rows(), &[a, b])?;
        let e = rref(&aug)?;
        if e.pivots.iter().any(|&p| p >= cols) {
            return Ok(None);
        }
        for (i, &p) in e.pivots.iter().enumerate() {
            for k in 0..b.cols() {
                out.set(p, k, e.r.get(i, cols + k).clone());
            }
        }
        return Ok(Some(out));
    }
    let modulus = ring.modulus();
    let lifted = a.cast(Ring::Integer).expect("integer lift");
    let data = int_parts(&lifted);
    let rhs: Vec<Vec<BigInt>> = (0..b.cols())
        .map(|k| (0..b.rows()).map(|i| b.get(i, k).to_bigint().unwrap()).collect())
        .collect();
    let Some(xs) = int::solve_systems_big(a.rows(), cols, &data, modulus, &rhs) else {
        return Ok(None);
    };
    for (k, x) in xs.iter().enumerate() {
        for (i, v) in x.iter().enumerate() {
            out.set(i, k, ring.from_bigint(v));
        }
    }
    Ok(Some(out))
}

/// Columns spanning `ker A`: a basis over a field (each column scaled to a
/// leading 1), a lattice basis over Z, a generating set over Z/n.
pub fn kernel_basis(a: &ExactMatrix) -> Result<ExactMatrix> {
    let ring = a.ring();
    let cols = a.cols();
    if ring.is_field() {
        let e = rref(a)?;
        let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
        let mut k = ExactMatrix::zeros(ring, cols, free.len());
        for (col, &f) in free.iter().enumerate() {
            k.set(f, col, ring.one());
            for (i, &p) in e.pivots.iter().enumerate() {
                k.set(p, col, -e.r.get(i, f));
            }
            let lead = (0..cols)
                .map(|i| k.get(i, col).clone())
                .find(|v| !v.is_zero())
                .expect("free column is nonzero");
            let inv = lead.invert().unwrap();
            for i in 0..cols {
                let v = k.get(i, col) * &inv;
                k.set(i, col, v);
            }
        }
        return Ok(k);
    }
    let basis = lattice_basis(cols, &homogeneous_generators(a));
    let vecs: Vec<&Vec<BigInt>> = match ring.modulus() {
        // n e_i basis vectors vanish mod n
        Some(n) => basis
            .iter()
            .filter(|v| v.iter().any(|x| !x.is_multiple_of(&BigInt::from(n))))
            .collect(),
        None => basis.iter().collect(),
    };
    let mut k = ExactMatrix::zeros(ring, cols, vecs.len());
    for (j, v) in vecs.iter().enumerate() {
        for i in 0..cols {
            k.set(i, j, ring.from_bigint(&v[i]));
        }
    }
    Ok(k)
}

/// Rank over a field.
pub fn rank(a: &ExactMatrix) -> Result<usize> {
    Ok(rref(a)?.rank())
}

/// `true` when every entry of the Hermite/Smith transform is integral and
/// the absolute determinant is one.
pub fn is_unimodular(a: &ExactMatrix) -> bool {
    determinant(a).is_ok_and(|d| d.abs() == BigInt::from(1))
}
