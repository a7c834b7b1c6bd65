use serde_json::{json, Value as Json};

use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::exact::is_prime;
use crate::regular::FiniteRing;

/// A finite-dimensional `G`-graded algebra over `F_p` on a homogeneous basis
/// `b_0, …, b_{d-1}`, with `b_i b_j = Σ_k c[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    p: u64,
    group: FiniteGroup,
    dim: usize,
    deg: Vec<usize>,
    mul: Vec<u64>,
    one: Vec<u64>,
}

impl GradedAlgebra {
    pub fn new(p: u64, group: FiniteGroup, deg: Vec<usize>, mul: Vec<Vec<Vec<u64>>>, one: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let dim = deg.len();
        if dim == 0 {
            return Err(Error::spec("an algebra needs at least one basis element"));
        }
        if mul.len() != dim || mul.iter().any(|r| r.len() != dim || r.iter().any(|c| c.len() != dim)) || one.len() != dim
        {
            return Err(Error::spec(format!("structure constants must be {dim}×{dim}×{dim} with a {dim}-vector unit")));
        }
        if deg.iter().any(|&d| d >= group.order()) {
            return Err(Error::BadGrading("degree outside the group".into()));
        }
        let alg = GradedAlgebra {
            p,
            group,
            dim,
            deg,
            mul: mul.into_iter().flatten().flatten().map(|c| c % p).collect(),
            one: one.into_iter().map(|c| c % p).collect(),
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let target = self.group.mul(self.deg[i], self.deg[j]);
                for k in 0..d {
                    if self.c(i, j, k) != 0 && self.deg[k] != target {
                        return Err(Error::BadGrading(format!("b{i}·b{j} has a component outside degree {target}")));
                    }
                }
            }
        }
        let e = self.group.identity();
        if (0..d).any(|k| self.one[k] != 0 && self.deg[k] != e) {
            return Err(Error::BadGrading("the unit must be homogeneous of degree e".into()));
        }
        for i in 0..d {
            let b = self.basis(i);
            if self.mul_elems(&self.one, &b) != b || self.mul_elems(&b, &self.one) != b {
                return Err(Error::NotARing(format!("unit law fails on b{i}")));
            }
            for j in 0..d {
                let bij = self.mul_elems(&b, &self.basis(j));
                for k in 0..d {
                    let bk = self.basis(k);
                    if self.mul_elems(&bij, &bk) != self.mul_elems(&b, &self.mul_elems(&self.basis(j), &bk)) {
                        return Err(Error::NotARing(format!("associativity fails on (b{i}, b{j}, b{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Same multiplication with every basis element in degree `e` of `group`.
    pub fn trivially_graded(p: u64, group: FiniteGroup, mul: Vec<Vec<Vec<u64>>>, one: Vec<u64>) -> Result<Self> {
        let deg = vec![group.identity(); one.len()];
        Self::new(p, group, deg, mul, one)
    }

    /// Same multiplication under another grading.
    pub fn regraded(&self, group: FiniteGroup, deg: Vec<usize>) -> Result<Self> {
        Self::new(self.p, group, deg, self.constants(), self.one.clone())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn deg(&self, i: usize) -> usize {
        self.deg[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.deg
    }

    pub fn one(&self) -> &[u64] {
        &self.one
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> u64 {
        self.mul[(i * self.dim + j) * self.dim + k]
    }

    pub fn constants(&self) -> Vec<Vec<Vec<u64>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| (0..self.dim).map(|k| self.c(i, j, k)).collect()).collect())
            .collect()
    }

    pub fn basis(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn mul_elems(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let d = self.dim;
        let mut out = vec![0; d];
        for i in (0..d).filter(|&i| a[i] != 0) {
            for j in (0..d).filter(|&j| b[j] != 0) {
                let ab = a[i] * b[j] % self.p;
                for (k, o) in out.iter_mut().enumerate() {
                    *o = (*o + ab * self.c(i, j, k)) % self.p;
                }
            }
        }
        out
    }

    /// Basis indices of the homogeneous component `R_σ`.
    pub fn component(&self, sigma: usize) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.deg[i] == sigma).collect()
    }

    /// Every element of `R_σ`, in mixed-radix order on its basis.
    pub fn component_elements(&self, sigma: usize, budget: u64) -> Result<Vec<Vec<u64>>> {
        let idx = self.component(sigma);
        let count = checked_pow(self.p, idx.len()).filter(|&c| c <= budget);
        let count = count.ok_or_else(|| Error::too_large("homogeneous component", format!("{}^{}", self.p, idx.len()), budget))?;
        Ok((0..count)
            .map(|mut n| {
                let mut v = vec![0; self.dim];
                for &i in idx.iter().rev() {
                    v[i] = n % self.p;
                    n /= self.p;
                }
                v
            })
            .collect())
    }

    /// `p^dim`.
    pub fn order(&self) -> Option<u64> {
        checked_pow(self.p, self.dim)
    }

    /// The underlying ring, grading forgotten.
    pub fn to_ring(&self) -> Result<FiniteRing> {
        FiniteRing::from_structure_constants(vec![self.p; self.dim], self.mul.clone(), self.one.clone())
    }

    /// `R_e` as an algebra of its own (trivially graded by the trivial group).
    pub fn identity_component(&self) -> Result<GradedAlgebra> {
        let idx = self.component(self.group.identity());
        let mul = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| idx.iter().map(|&k| self.c(i, j, k)).collect()).collect())
            .collect();
        let one = idx.iter().map(|&k| self.one[k]).collect();
        GradedAlgebra::trivially_graded(self.p, FiniteGroup::trivial(), mul, one)
    }

    pub fn to_json(&self) -> Json {
        json!({
            "p": self.p,
            "group": self.group.to_json(),
            "dim": self.dim,
            "deg": self.deg,
            "mul": self.constants(),
            "one": self.one,
        })
    }

    pub fn from_json(v: &Json) -> Result<Self> {
        let p = v.get("p").and_then(Json::as_u64).ok_or_else(|| Error::spec("algebra needs a prime \"p\""))?;
        let group = match v.get("group") {
            Some(g) => FiniteGroup::from_json(g)?,
            None => FiniteGroup::trivial(),
        };
        let mul: Vec<Vec<Vec<u64>>> = serde_json::from_value(v.get("mul").cloned().unwrap_or(Json::Null))
            .map_err(|_| Error::spec("\"mul\" must be a dim×dim×dim array of residues"))?;
        let one: Vec<u64> = serde_json::from_value(v.get("one").cloned().unwrap_or(Json::Null))
            .map_err(|_| Error::spec("\"one\" must be a vector of residues"))?;
        let deg: Vec<usize> = match v.get("deg") {
            Some(d) => serde_json::from_value(d.clone()).map_err(|_| Error::spec("\"deg\" must list group indices"))?,
            None => vec![group.identity(); one.len()],
        };
        if let Some(d) = v.get("dim") {
            if d.as_u64() != Some(deg.len() as u64) {
                return Err(Error::spec("\"dim\" does not match the basis"));
            }
        }
        Self::new(p, group, deg, mul, one)
    }
}

fn checked_pow(p: u64, e: usize) -> Option<u64> {
    (0..e).try_fold(1u64, |acc, _| acc.checked_mul(p))
}

/// Named algebras used by the examples, the tests and the verification
/// family.
pub mod algebras {
    use super::*;

    fn constants(d: usize, f: impl Fn(usize, usize) -> Option<(usize, u64)>) -> Vec<Vec<Vec<u64>>> {
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut v = vec![0; d];
                        if let Some((k, c)) = f(i, j) {
                            v[k] = c;
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    fn unit(d: usize, at: usize) -> Vec<u64> {
        let mut v = vec![0; d];
        v[at] = 1;
        v
    }

    /// `F_p[G]` on the group basis; `natural` puts `g` in degree `g`,
    /// otherwise everything sits in degree `e`.
    pub fn group_algebra(p: u64, g: &FiniteGroup, natural: bool) -> Result<GradedAlgebra> {
        let n = g.order();
        let mul = constants(n, |a, b| Some((g.mul(a, b), 1)));
        let deg = if natural { (0..n).collect() } else { vec![g.identity(); n] };
        GradedAlgebra::new(p, g.clone(), deg, mul, unit(n, g.identity()))
    }

    /// `F_p^k`, trivially graded by `g`.
    pub fn product_of_fields(p: u64, k: usize, g: &FiniteGroup) -> Result<GradedAlgebra> {
        let mul = constants(k, |a, b| (a == b).then_some((a, 1)));
        GradedAlgebra::trivially_graded(p, g.clone(), mul, vec![1; k])
    }

    /// `F_p[x]/x^n` on `1, x, …, x^{n-1}` with `x` in degree `x_deg` (its
    /// powers in the matching powers of that degree).
    pub fn truncated_polynomial(p: u64, n: usize, g: &FiniteGroup, x_deg: usize) -> Result<GradedAlgebra> {
        let mul = constants(n, |a, b| (a + b < n).then_some((a + b, 1)));
        let mut deg = vec![g.identity(); n];
        for k in 1..n {
            deg[k] = g.mul(deg[k - 1], x_deg);
        }
        GradedAlgebra::new(p, g.clone(), deg, mul, unit(n, 0))
    }

    /// Upper triangular 2×2 matrices on `E11, E12, E22`, with `E12` in
    /// degree `off`.
    pub fn upper_triangular(p: u64, g: &FiniteGroup, off: usize) -> Result<GradedAlgebra> {
        // index: 0 = E11, 1 = E12, 2 = E22
        let entry = |k: usize| [(0, 0), (0, 1), (1, 1)][k];
        let mul = constants(3, |a, b| {
            let ((i, j), (k, l)) = (entry(a), entry(b));
            (j == k).then(|| ([(0, 0), (0, 1), (1, 1)].iter().position(|&e| e == (i, l)).unwrap(), 1))
        });
        let e = g.identity();
        GradedAlgebra::new(p, g.clone(), vec![e, off, e], mul, vec![1, 0, 1])
    }

    /// `M_2(F_p)` on `E11, E12, E21, E22` with `E12` in degree `off` and
    /// `E21` in its inverse.
    pub fn matrix_algebra(p: u64, g: &FiniteGroup, off: usize) -> Result<GradedAlgebra> {
        let mul = constants(4, |a, b| {
            let ((i, j), (k, l)) = ((a / 2, a % 2), (b / 2, b % 2));
            (j == k).then_some((i * 2 + l, 1))
        });
        let e = g.identity();
        GradedAlgebra::new(p, g.clone(), vec![e, off, g.inv(off), e], mul, vec![1, 0, 0, 1])
    }

    /// `A × B` over the same field and group, gradings side by side.
    pub fn product(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra> {
        if a.p != b.p || a.group != b.group {
            return Err(Error::spec("factors of a product must share the field and the group"));
        }
        let (da, db) = (a.dim, b.dim);
        let d = da + db;
        let mul = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut v = vec![0; d];
                        if i < da && j < da {
                            for k in 0..da {
                                v[k] = a.c(i, j, k);
                            }
                        } else if i >= da && j >= da {
                            for k in 0..db {
                                v[da + k] = b.c(i - da, j - da, k);
                            }
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let deg = a.deg.iter().chain(&b.deg).copied().collect();
        let one = a.one.iter().chain(&b.one).copied().collect();
        GradedAlgebra::new(a.p, a.group.clone(), deg, mul, one)
    }
}

#[cfg(test)]
mod tests {
    use super::algebras::*;
    use super::*;

    #[test]
    fn named_algebras_are_valid() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let c3 = FiniteGroup::cyclic(3).unwrap();
        for p in [2, 3] {
            group_algebra(p, &c2, true).unwrap();
            group_algebra(p, &c3, false).unwrap();
            truncated_polynomial(p, 3, &c3, 1).unwrap();
            upper_triangular(p, &c2, 1).unwrap();
            matrix_algebra(p, &c2, 1).unwrap();
            product(&product_of_fields(p, 1, &c2).unwrap(), &group_algebra(p, &c2, true).unwrap()).unwrap();
        }
    }

    #[test]
    fn grading_is_checked() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let a = group_algebra(2, &c2, true).unwrap();
        // g·g = 1 must land in degree g·g = e, so putting 1 in degree g fails
        assert!(matches!(a.regraded(c2.clone(), vec![1, 1]), Err(Error::BadGrading(_))));
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let b = group_algebra(2, &c3, true).unwrap();
        assert!(b.regraded(c3, vec![0, 1, 1]).is_err());
        let bad = GradedAlgebra::trivially_graded(4, c2.clone(), vec![vec![vec![1]]], vec![1]);
        assert_eq!(bad.unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn json_round_trip() {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let a = truncated_polynomial(3, 3, &c3, 1).unwrap();
        assert_eq!(GradedAlgebra::from_json(&a.to_json()).unwrap(), a);
        assert_eq!(a.component(1), vec![1]);
        assert_eq!(a.component_elements(2, 100).unwrap().len(), 3);
    }

    #[test]
    fn identity_component() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let m = matrix_algebra(2, &c2, 1).unwrap();
        let re = m.identity_component().unwrap();
        assert_eq!(re.dim(), 2);
        assert!(re.to_ring().unwrap().is_vn_regular().unwrap());
    }
}
