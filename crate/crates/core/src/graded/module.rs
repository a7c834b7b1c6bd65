use std::sync::Arc;

use serde_json::{json, Value as Json};

use super::algebra::GradedAlgebra;
use super::fp;
use crate::error::{Error, Result};
use crate::regular::FiniteRing;

/// A graded left module over a [`GradedAlgebra`] on a homogeneous basis
/// `m_0, …, m_{d-1}`, with `b_i·m_j = Σ_k a[i][j][k] m_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    algebra: Arc<GradedAlgebra>,
    dim: usize,
    deg: Vec<usize>,
    action: Vec<u64>,
}

impl GradedModule {
    pub fn new(algebra: Arc<GradedAlgebra>, deg: Vec<usize>, action: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        let (r, d) = (algebra.dim(), deg.len());
        if action.len() != r || action.iter().any(|a| a.len() != d || a.iter().any(|c| c.len() != d)) {
            return Err(Error::spec(format!("action constants must be {r}×{d}×{d}")));
        }
        if deg.iter().any(|&s| s >= algebra.group().order()) {
            return Err(Error::BadGrading("degree outside the group".into()));
        }
        let p = algebra.p();
        let m = GradedModule {
            algebra,
            dim: d,
            deg,
            action: action.into_iter().flatten().flatten().map(|c| c % p).collect(),
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let alg = &*self.algebra;
        let g = alg.group();
        for i in 0..alg.dim() {
            for j in 0..self.dim {
                let target = g.mul(alg.deg(i), self.deg[j]);
                if (0..self.dim).any(|k| self.a(i, j, k) != 0 && self.deg[k] != target) {
                    return Err(Error::BadGrading(format!("b{i}·m{j} leaves degree {target}")));
                }
            }
        }
        for j in 0..self.dim {
            let m = unit(self.dim, j);
            if self.act(alg.one(), &m) != m {
                return Err(Error::spec(format!("the unit does not fix m{j}")));
            }
            for i in 0..alg.dim() {
                for k in 0..alg.dim() {
                    let (bi, bk) = (alg.basis(i), alg.basis(k));
                    if self.act(&alg.mul_elems(&bi, &bk), &m) != self.act(&bi, &self.act(&bk, &m)) {
                        return Err(Error::spec(format!("(b{i}b{k})·m{j} ≠ b{i}·(b{k}·m{j})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `R` as a graded left module over itself.
    pub fn regular(algebra: &Arc<GradedAlgebra>) -> Self {
        GradedModule {
            algebra: algebra.clone(),
            dim: algebra.dim(),
            deg: algebra.degrees().to_vec(),
            action: algebra.constants().into_iter().flatten().flatten().collect(),
        }
    }

    pub fn zero(algebra: &Arc<GradedAlgebra>) -> Self {
        GradedModule {
            algebra: algebra.clone(),
            dim: 0,
            deg: Vec::new(),
            action: Vec::new(),
        }
    }

    /// `⊕ M_t`, bases concatenated.
    pub fn direct_sum(parts: &[GradedModule]) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::spec("a direct sum needs at least one summand"));
        };
        if parts.iter().any(|m| m.algebra != first.algebra) {
            return Err(Error::MixedVariant);
        }
        let r = first.algebra.dim();
        let d: usize = parts.iter().map(|m| m.dim).sum();
        let mut action = vec![vec![vec![0; d]; d]; r];
        let mut off = 0;
        for m in parts {
            for i in 0..r {
                for j in 0..m.dim {
                    for k in 0..m.dim {
                        action[i][off + j][off + k] = m.a(i, j, k);
                    }
                }
            }
            off += m.dim;
        }
        let deg = parts.iter().flat_map(|m| m.deg.iter().copied()).collect();
        Self::new(first.algebra.clone(), deg, action)
    }

    /// `M(σ)` with `M(σ)_τ = M_{τσ}`: a basis element of degree `ρ` moves to
    /// degree `ρσ⁻¹`.
    pub fn suspension(&self, sigma: usize) -> Result<Self> {
        let g = self.algebra.group();
        if sigma >= g.order() {
            return Err(Error::BadGrading(format!("{sigma} is not a group element")));
        }
        let mut out = self.clone();
        for d in out.deg.iter_mut() {
            *d = g.mul(*d, g.inv(sigma));
        }
        Ok(out)
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degrees(&self) -> &[usize] {
        &self.deg
    }

    fn a(&self, i: usize, j: usize, k: usize) -> u64 {
        self.action[(i * self.dim + j) * self.dim + k]
    }

    /// `r·m` for coordinate vectors.
    pub fn act(&self, r: &[u64], m: &[u64]) -> Vec<u64> {
        let p = self.algebra.p();
        let mut out = vec![0; self.dim];
        for i in (0..r.len()).filter(|&i| r[i] != 0) {
            for j in (0..self.dim).filter(|&j| m[j] != 0) {
                let c = r[i] * m[j] % p;
                for (k, o) in out.iter_mut().enumerate() {
                    *o = (*o + c * self.a(i, j, k)) % p;
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Json {
        let r = self.algebra.dim();
        let action: Vec<Vec<Vec<u64>>> = (0..r)
            .map(|i| (0..self.dim).map(|j| (0..self.dim).map(|k| self.a(i, j, k)).collect()).collect())
            .collect();
        json!({"algebra": self.algebra.to_json(), "dim": self.dim, "deg": self.deg, "action": action})
    }
}

fn unit(d: usize, at: usize) -> Vec<u64> {
    let mut v = vec![0; d];
    v[at] = 1;
    v
}

/// A degree-preserving module map as a `rows × cols` matrix over F_p
/// (columns are images of the source basis).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrMap {
    rows: usize,
    cols: usize,
    p: u64,
    data: Vec<u64>,
}

impl GrMap {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// `self ∘ g`.
    pub fn after(&self, g: &GrMap) -> GrMap {
        assert_eq!(self.cols, g.rows, "composable maps");
        let mut data = vec![0; self.rows * g.cols];
        for i in 0..self.rows {
            for l in 0..self.cols {
                let x = self.get(i, l);
                if x == 0 {
                    continue;
                }
                for j in 0..g.cols {
                    data[i * g.cols + j] = (data[i * g.cols + j] + x * g.get(l, j)) % self.p;
                }
            }
        }
        GrMap {
            rows: self.rows,
            cols: g.cols,
            p: self.p,
            data,
        }
    }

    /// Image of a coordinate vector.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum::<u64>() % self.p)
            .collect()
    }

    pub fn to_json(&self) -> Json {
        let rows: Vec<&[u64]> = if self.cols == 0 {
            vec![&[]; self.rows]
        } else {
            self.data.chunks(self.cols).collect()
        };
        json!(rows)
    }
}

/// `Hom_gr(M, N)` as an F_p-space: the degree-zero matrices commuting with
/// the action, described by a basis.
#[derive(Clone, Debug)]
pub struct HomSpace {
    rows: usize,
    cols: usize,
    p: u64,
    basis: Vec<GrMap>,
    /// Matrix position read off as the coordinate of each basis element.
    coord_pos: Vec<usize>,
}

/// Solves the linear conditions `f(b_i·m_j) = b_i·f(m_j)` on degree-zero
/// matrices.
pub fn hom_space(m: &GradedModule, n: &GradedModule) -> Result<HomSpace> {
    if m.algebra != n.algebra {
        return Err(Error::MixedVariant);
    }
    let p = m.algebra.p();
    let (rows, cols) = (n.dim, m.dim);
    // unknowns: entries (k, j) with matching degrees
    let vars: Vec<(usize, usize)> = (0..rows)
        .flat_map(|k| (0..cols).map(move |j| (k, j)))
        .filter(|&(k, j)| n.deg[k] == m.deg[j])
        .collect();
    let var_of = |k: usize, j: usize| vars.iter().position(|&v| v == (k, j));
    let mut eqs = Vec::new();
    for i in 0..m.algebra.dim() {
        for j in 0..cols {
            for k in 0..rows {
                let mut row = vec![0u64; vars.len()];
                // Σ_l a^M[i][j][l] F[k][l] − Σ_l a^N[i][l][k] F[l][j]
                for l in 0..cols {
                    if let Some(v) = var_of(k, l) {
                        row[v] = (row[v] + m.a(i, j, l)) % p;
                    }
                }
                for l in 0..rows {
                    if let Some(v) = var_of(l, j) {
                        row[v] = (row[v] + (p - n.a(i, l, k)) % p) % p;
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    eqs.push(row);
                }
            }
        }
    }
    let (sols, free) = fp::nullspace(eqs, vars.len(), p);
    let basis = sols
        .into_iter()
        .map(|s| {
            let mut data = vec![0; rows * cols];
            for (v, &(k, j)) in vars.iter().enumerate() {
                data[k * cols + j] = s[v];
            }
            GrMap { rows, cols, p, data }
        })
        .collect();
    let coord_pos = free.iter().map(|&v| vars[v].0 * cols + vars[v].1).collect();
    Ok(HomSpace {
        rows,
        cols,
        p,
        basis,
        coord_pos,
    })
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GrMap] {
        &self.basis
    }

    /// `p^dim`, if it fits.
    pub fn cardinality(&self) -> Option<u64> {
        (0..self.dim()).try_fold(1u64, |acc, _| acc.checked_mul(self.p))
    }

    /// Element with the given mixed-radix index (first basis vector most
    /// significant); index 0 is the zero map.
    pub fn get(&self, mut index: u64) -> GrMap {
        let mut data = vec![0; self.rows * self.cols];
        for b in self.basis.iter().rev() {
            let c = index % self.p;
            index /= self.p;
            if c != 0 {
                for (d, x) in data.iter_mut().zip(&b.data) {
                    *d = (*d + c * x) % self.p;
                }
            }
        }
        GrMap {
            rows: self.rows,
            cols: self.cols,
            p: self.p,
            data,
        }
    }

    pub fn enumerate(&self, budget: u64) -> Result<Vec<GrMap>> {
        let n = self
            .cardinality()
            .filter(|&n| n <= budget)
            .ok_or_else(|| Error::too_large("graded hom-set", format!("{}^{}", self.p, self.dim()), budget))?;
        Ok((0..n).map(|i| self.get(i)).collect())
    }

    /// Coordinates of a member of the space.
    pub fn coords(&self, f: &GrMap) -> Vec<u64> {
        let c: Vec<u64> = self.coord_pos.iter().map(|&pos| f.data[pos]).collect();
        debug_assert_eq!(
            {
                let mut data = vec![0; self.rows * self.cols];
                for (b, &x) in self.basis.iter().zip(&c) {
                    for (d, y) in data.iter_mut().zip(&b.data) {
                        *d = (*d + x * y) % self.p;
                    }
                }
                data
            },
            f.data,
            "map lies in the hom-space"
        );
        c
    }

    /// The endomorphism ring when source and target agree, multiplication
    /// being composition.
    pub fn ring(&self) -> Result<FiniteRing> {
        if self.rows != self.cols {
            return Err(Error::shape("endomorphism ring of a hom-space between different modules"));
        }
        let k = self.dim();
        let mut c = Vec::with_capacity(k * k * k);
        for s in &self.basis {
            for t in &self.basis {
                c.extend(self.coords(&s.after(t)));
            }
        }
        let mut id = vec![0; self.rows * self.cols];
        for i in 0..self.rows {
            id[i * self.cols + i] = 1;
        }
        let identity = GrMap {
            rows: self.rows,
            cols: self.cols,
            p: self.p,
            data: id,
        };
        let one = self.coords(&identity);
        FiniteRing::from_structure_constants(vec![self.p; k], c, one)
    }
}

/// Every map of `Hom_gr(M, N)`.
pub fn graded_hom(m: &GradedModule, n: &GradedModule, budget: u64) -> Result<Vec<GrMap>> {
    hom_space(m, n)?.enumerate(budget)
}

/// Whether every `f` in `fwd` has some `g` in `back` with `f g f = f`; on
/// failure, the first such `f`.
pub(crate) fn maps_regular(fwd: &HomSpace, back: &HomSpace, budget: u64) -> Result<Option<GrMap>> {
    let gs = back.enumerate(budget)?;
    for f in fwd.enumerate(budget)? {
        if !gs.iter().any(|g| f.after(g).after(&f) == f) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::super::algebra::algebras::*;
    use super::super::group::FiniteGroup;
    use super::*;

    fn f2c2(natural: bool) -> Arc<GradedAlgebra> {
        Arc::new(group_algebra(2, &FiniteGroup::cyclic(2).unwrap(), natural).unwrap())
    }

    #[test]
    fn suspension_examples() {
        let r = GradedModule::regular(&f2c2(true));
        assert_eq!(r.suspension(0).unwrap(), r);
        let rg = r.suspension(1).unwrap();
        // R(g)_e is the old R_g = span{g}
        assert_eq!(rg.degrees(), &[1, 0]);
        let c3 = Arc::new(group_algebra(3, &FiniteGroup::cyclic(3).unwrap(), true).unwrap());
        let m = GradedModule::regular(&c3);
        for s in 0..3 {
            for t in 0..3 {
                assert_eq!(m.suspension(s).unwrap().suspension(t).unwrap(), m.suspension((s + t) % 3).unwrap());
            }
        }
    }

    #[test]
    fn hom_examples() {
        let a = f2c2(true);
        let r = GradedModule::regular(&a);
        assert_eq!(graded_hom(&r, &r.suspension(1).unwrap(), 100).unwrap().len(), 2);
        assert_eq!(graded_hom(&r, &r, 100).unwrap().len(), 2);
        assert_eq!(graded_hom(&GradedModule::zero(&a), &r, 100).unwrap().len(), 1);
        // every listed map is R-linear and degree-preserving
        let n = r.suspension(1).unwrap();
        for f in graded_hom(&r, &n, 100).unwrap() {
            for i in 0..2 {
                for j in 0..2 {
                    let bi = a.basis(i);
                    let mj = unit(2, j);
                    assert_eq!(f.apply(&r.act(&bi, &mj)), n.act(&bi, &f.apply(&mj)));
                }
            }
        }
    }

    #[test]
    fn hom_from_regular_matches_component() {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let a = Arc::new(truncated_polynomial(3, 3, &c3, 1).unwrap());
        let r = GradedModule::regular(&a);
        for s in 0..3 {
            let h = graded_hom(&r, &r.suspension(s).unwrap(), 1000).unwrap();
            assert_eq!(h.len(), 3usize.pow(a.component(s).len() as u32));
        }
    }

    #[test]
    fn end_ring_of_regular_module() {
        let a = f2c2(false);
        let r = GradedModule::regular(&a);
        let e = hom_space(&r, &r).unwrap().ring().unwrap();
        assert_eq!(e.order(), 4);
        assert!(!e.is_semiprime());
    }
}
