//! Integer elimination kernels (Hermite and Smith forms).
//!
//! The kernels are generic over the entry type so that the common case runs
//! on checked `i64` arithmetic; any overflow aborts the attempt and the
//! caller reruns on `BigInt`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub(crate) trait Entry: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    /// `|self| < |other|`
    fn abs_lt(&self, other: &Self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Quotient leaving a remainder in `[0, |o|)`.
    fn div_euclid(&self, o: &Self) -> Option<Self>;
    fn divisible_by(&self, o: &Self) -> bool;
}

impl Entry for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_euclid(&self, o: &Self) -> Option<Self> {
        self.checked_div_euclid(*o)
    }
    fn divisible_by(&self, o: &Self) -> bool {
        *o != 0 && self.checked_rem(*o).is_none_or(|r| r == 0)
    }
}

impl Entry for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_euclid(&self, o: &Self) -> Option<Self> {
        let (q, r) = self.div_mod_floor(o);
        // floor division leaves r with the sign of o; shift to [0, |o|)
        if Signed::is_negative(&r) {
            Some(q + 1)
        } else {
            Some(q)
        }
    }
    fn divisible_by(&self, o: &Self) -> bool {
        !Zero::is_zero(o) && Zero::is_zero(&(self % o))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct IntMat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Entry> IntMat<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        IntMat { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        IntMat {
            rows: n,
            cols: n,
            data,
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &T) -> Option<()> {
        if k.is_zero() {
            return Some(());
        }
        for j in 0..self.cols {
            let s = self.at(src, j);
            if s.is_zero() {
                continue;
            }
            let v = self.at(dst, j).add(&s.mul(k)?)?;
            self.data[dst * self.cols + j] = v;
        }
        Some(())
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &T) -> Option<()> {
        if k.is_zero() {
            return Some(());
        }
        for i in 0..self.rows {
            let s = self.at(i, src);
            if s.is_zero() {
                continue;
            }
            let v = self.at(i, dst).add(&s.mul(k)?)?;
            self.data[i * self.cols + dst] = v;
        }
        Some(())
    }

    fn negate_row(&mut self, r: usize) -> Option<()> {
        for j in 0..self.cols {
            let v = self.at(r, j).neg()?;
            self.data[r * self.cols + j] = v;
        }
        Some(())
    }

    fn negate_col(&mut self, c: usize) -> Option<()> {
        for i in 0..self.rows {
            let v = self.at(i, c).neg()?;
            self.data[i * self.cols + c] = v;
        }
        Some(())
    }
}

/// Row operations applied to a matrix together with its transform `u`
/// (and optionally `u^-1`, updated by the inverse column operations).
struct RowTracker<'a, T> {
    u: &'a mut IntMat<T>,
    u_inv: Option<&'a mut IntMat<T>>,
}

impl<T: Entry> RowTracker<'_, T> {
    fn swap(&mut self, m: &mut IntMat<T>, a: usize, b: usize) {
        m.swap_rows(a, b);
        self.u.swap_rows(a, b);
        if let Some(inv) = self.u_inv.as_deref_mut() {
            inv.swap_cols(a, b);
        }
    }

    fn add(&mut self, m: &mut IntMat<T>, dst: usize, src: usize, k: &T) -> Option<()> {
        m.add_row(dst, src, k)?;
        self.u.add_row(dst, src, k)?;
        if let Some(inv) = self.u_inv.as_deref_mut() {
            inv.add_col(src, dst, &k.neg()?)?;
        }
        Some(())
    }

    fn negate(&mut self, m: &mut IntMat<T>, r: usize) -> Option<()> {
        m.negate_row(r)?;
        self.u.negate_row(r)?;
        if let Some(inv) = self.u_inv.as_deref_mut() {
            inv.negate_col(r)?;
        }
        Some(())
    }
}

/// Row-style Hermite form: returns `(H, U)` with `U*A = H`, `U` unimodular,
/// pivots positive and the entries above each pivot in `[0, pivot)`.
pub(crate) fn hnf<T: Entry>(a: &IntMat<T>) -> Option<(IntMat<T>, IntMat<T>)> {
    let mut h = a.clone();
    let mut u = IntMat::identity(a.rows);
    let mut tr = RowTracker {
        u: &mut u,
        u_inv: None,
    };
    let mut r = 0;
    for c in 0..h.cols {
        if r == h.rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..h.rows {
                let v = h.at(i, c);
                if !v.is_zero() && best.is_none_or(|b| v.abs_lt(h.at(b, c))) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            tr.swap(&mut h, r, b);
            let mut done = true;
            for i in r + 1..h.rows {
                if h.at(i, c).is_zero() {
                    continue;
                }
                let q = h.at(i, c).div_euclid(h.at(r, c))?;
                tr.add(&mut h, i, r, &q.neg()?)?;
                if !h.at(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.at(r, c).is_zero() {
            continue;
        }
        if h.at(r, c).is_negative() {
            tr.negate(&mut h, r)?;
        }
        for i in 0..r {
            let q = h.at(i, c).div_euclid(h.at(r, c))?;
            tr.add(&mut h, i, r, &q.neg()?)?;
        }
        r += 1;
    }
    Some((h, u))
}

pub(crate) struct SmithParts<T> {
    pub d: IntMat<T>,
    pub p: IntMat<T>,
    pub p_inv: IntMat<T>,
    pub q: IntMat<T>,
    pub rank: usize,
}

/// Smith form `P*A*Q = D` pivoting on the least absolute nonzero entry.
pub(crate) fn smith<T: Entry>(a: &IntMat<T>) -> Option<SmithParts<T>> {
    let mut m = a.clone();
    let mut p = IntMat::identity(a.rows);
    let mut p_inv = IntMat::identity(a.rows);
    let mut q = IntMat::identity(a.cols);
    let mut tr = RowTracker {
        u: &mut p,
        u_inv: Some(&mut p_inv),
    };
    let mut t = 0;
    while t < m.rows.min(m.cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                let v = m.at(i, j);
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs_lt(m.at(bi, bj))) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        tr.swap(&mut m, t, bi);
        m.swap_cols(t, bj);
        q.swap_cols(t, bj);
        loop {
            for i in t + 1..m.rows {
                if !m.at(i, t).is_zero() {
                    let k = m.at(i, t).div_euclid(m.at(t, t))?.neg()?;
                    tr.add(&mut m, i, t, &k)?;
                }
            }
            for j in t + 1..m.cols {
                if !m.at(t, j).is_zero() {
                    let k = m.at(t, j).div_euclid(m.at(t, t))?.neg()?;
                    m.add_col(j, t, &k)?;
                    q.add_col(j, t, &k)?;
                }
            }
            // a leftover remainder becomes the new, strictly smaller pivot
            let mut smaller: Option<(bool, usize)> = None;
            let mut cur = m.at(t, t).clone();
            for i in t + 1..m.rows {
                if !m.at(i, t).is_zero() && m.at(i, t).abs_lt(&cur) {
                    cur = m.at(i, t).clone();
                    smaller = Some((true, i));
                }
            }
            for j in t + 1..m.cols {
                if !m.at(t, j).is_zero() && m.at(t, j).abs_lt(&cur) {
                    cur = m.at(t, j).clone();
                    smaller = Some((false, j));
                }
            }
            match smaller {
                Some((true, i)) => {
                    tr.swap(&mut m, t, i);
                    continue;
                }
                Some((false, j)) => {
                    m.swap_cols(t, j);
                    q.swap_cols(t, j);
                    continue;
                }
                None => {}
            }
            let mut offender = None;
            'scan: for i in t + 1..m.rows {
                for j in t + 1..m.cols {
                    if !m.at(i, j).divisible_by(m.at(t, t)) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => tr.add(&mut m, t, i, &T::one())?,
                None => break,
            }
        }
        if m.at(t, t).is_negative() {
            tr.negate(&mut m, t)?;
        }
        t += 1;
    }
    Some(SmithParts {
        d: m,
        p,
        p_inv,
        q,
        rank: t,
    })
}

/// Solutions of `A x = b` for each `b` in `rhs`, over Z (`modulus` None)
/// or over Z/n with `A`, `b` lifted to integers. Each solution is reduced
/// against the Hermite basis of the homogeneous solution lattice. `None` on
/// overflow; `Some(None)` when some system is inconsistent.
pub(crate) fn solve_systems<T: Entry>(a: &IntMat<T>, modulus: Option<&T>, rhs: &[Vec<T>]) -> Option<Option<Vec<Vec<T>>>> {
    let (rows, cols) = (a.rows, a.cols);
    let sys = match modulus {
        None => a.clone(),
        Some(n) => {
            let width = cols + rows;
            let mut data = Vec::with_capacity(rows * width);
            for i in 0..rows {
                data.extend_from_slice(&a.data[i * cols..(i + 1) * cols]);
                data.extend((0..rows).map(|k| if k == i { n.clone() } else { T::zero() }));
            }
            IntMat::new(rows, width, data)
        }
    };
    let s = smith(&sys)?;
    let total = sys.cols;
    let mut out = Vec::with_capacity(rhs.len());
    let mut basis: Option<Vec<Vec<T>>> = None;
    for b in rhs {
        let mut y = vec![T::zero(); total];
        for i in 0..rows {
            let mut c = T::zero();
            for (k, bk) in b.iter().enumerate() {
                c = c.add(&s.p.at(i, k).mul(bk)?)?;
            }
            if i < s.rank {
                let d = s.d.at(i, i);
                if !c.divisible_by(d) {
                    return Some(None);
                }
                y[i] = c.div_euclid(d)?;
            } else if !c.is_zero() {
                return Some(None);
            }
        }
        let mut x = Vec::with_capacity(cols);
        for i in 0..cols {
            let mut v = T::zero();
            for (j, yj) in y.iter().enumerate() {
                v = v.add(&s.q.at(i, j).mul(yj)?)?;
            }
            x.push(v);
        }
        if basis.is_none() {
            let mut gens: Vec<T> = Vec::new();
            let mut count = 0;
            for j in s.rank..total {
                gens.extend((0..cols).map(|i| s.q.at(i, j).clone()));
                count += 1;
            }
            if let Some(n) = modulus {
                for i in 0..cols {
                    gens.extend((0..cols).map(|k| if k == i { n.clone() } else { T::zero() }));
                    count += 1;
                }
            }
            let (h, _) = hnf(&IntMat::new(count, cols, gens))?;
            basis = Some(
                (0..h.rows)
                    .map(|i| h.data[i * cols..(i + 1) * cols].to_vec())
                    .filter(|r| r.iter().any(|v| !v.is_zero()))
                    .collect(),
            );
        }
        for row in basis.as_ref().expect("computed above") {
            let Some(p) = row.iter().position(|v| !v.is_zero()) else {
                continue;
            };
            let q = x[p].div_euclid(&row[p])?;
            if q.is_zero() {
                continue;
            }
            let q = q.neg()?;
            for (xi, ri) in x.iter_mut().zip(row) {
                *xi = xi.add(&ri.mul(&q)?)?;
            }
        }
        out.push(x);
    }
    Some(Some(out))
}

/// [`solve_systems`] on `i64` when everything fits, otherwise on BigInt.
pub(crate) fn solve_systems_big(
    rows: usize,
    cols: usize,
    a: &[BigInt],
    modulus: Option<u64>,
    rhs: &[Vec<BigInt>],
) -> Option<Vec<Vec<BigInt>>> {
    let small_rhs: Option<Vec<Vec<i64>>> =
        rhs.iter().map(|b| b.iter().map(ToPrimitive::to_i64).collect()).collect();
    let small_mod = modulus.map(|n| i64::try_from(n).ok());
    if let (Some(m), Some(r), Some(n)) = (to_i64_mat(rows, cols, a), small_rhs, small_mod.unwrap_or(Some(0))) {
        let n = modulus.map(|_| n);
        if let Some(res) = solve_systems(&m, n.as_ref(), &r) {
            return res.map(|xs| xs.into_iter().map(|x| x.into_iter().map(BigInt::from).collect()).collect());
        }
    }
    let n = modulus.map(BigInt::from);
    solve_systems(&IntMat::new(rows, cols, a.to_vec()), n.as_ref(), rhs).expect("BigInt arithmetic cannot overflow")
}

pub(crate) fn to_i64_mat(rows: usize, cols: usize, v: &[BigInt]) -> Option<IntMat<i64>> {
    Some(IntMat::new(
        rows,
        cols,
        v.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>()?,
    ))
}

pub(crate) fn widen(m: IntMat<i64>) -> IntMat<BigInt> {
    IntMat::new(m.rows, m.cols, m.data.into_iter().map(BigInt::from).collect())
}

/// Runs `f` on the fast representation when possible, otherwise on BigInt.
pub(crate) fn with_fast_path<R>(
    rows: usize,
    cols: usize,
    v: &[BigInt],
    fast: impl FnOnce(&IntMat<i64>) -> Option<R>,
    slow: impl FnOnce(&IntMat<BigInt>) -> R,
) -> R {
    if let Some(m) = to_i64_mat(rows, cols, v) {
        if let Some(r) = fast(&m) {
            return r;
        }
    }
    slow(&IntMat::new(rows, cols, v.to_vec()))
}
