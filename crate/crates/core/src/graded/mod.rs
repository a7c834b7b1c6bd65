//! Finite group-graded algebras over F_p: gr-regularity, suspensions,
//! graded hom-sets, smash products and the regularity equivalences between
//! them.

mod algebra;
mod fp;
mod group;
mod module;

use std::sync::Arc;

pub use algebra::{algebras, GradedAlgebra};
pub use group::FiniteGroup;
pub use module::{graded_hom, hom_space, GrMap, GradedModule, HomSpace};

use crate::abcat::DEFAULT_BUDGET;
use crate::error::{Error, Result};
use crate::regular::FiniteRing;

/// Every homogeneous `x_σ` has `y` with `x_σ y x_σ = x_σ`; `y` is searched
/// in `R_{σ⁻¹}`, which loses nothing since the other components of `y`
/// cannot contribute to degree `σ`.
pub fn is_gr_regular(r: &GradedAlgebra) -> Result<bool> {
    Ok(gr_regular_counterexample(r, DEFAULT_BUDGET)?.is_none())
}

/// The first homogeneous element without an inner inverse, with its degree.
pub fn gr_regular_counterexample(r: &GradedAlgebra, budget: u64) -> Result<Option<(usize, Vec<u64>)>> {
    let g = r.group();
    for sigma in 0..g.order() {
        let xs = r.component_elements(sigma, budget)?;
        let ys = r.component_elements(g.inv(sigma), budget)?;
        for x in xs {
            if !ys.iter().any(|y| r.mul_elems(&r.mul_elems(&x, y), &x) == x) {
                return Ok(Some((sigma, x)));
            }
        }
    }
    Ok(None)
}

/// `M(σ)`.
pub fn suspension(m: &GradedModule, sigma: usize) -> Result<GradedModule> {
    m.suspension(sigma)
}

/// Every graded morphism `R → R(σ)` has a generalized inverse among the
/// graded morphisms `R(σ) → R`.
pub fn is_suspension_regular(r: &GradedAlgebra, sigma: usize) -> Result<bool> {
    let a = Arc::new(r.clone());
    let reg = GradedModule::regular(&a);
    let shifted = reg.suspension(sigma)?;
    let fwd = hom_space(&reg, &shifted)?;
    let back = hom_space(&shifted, &reg)?;
    Ok(module::maps_regular(&fwd, &back, DEFAULT_BUDGET)?.is_none())
}

fn ring_budget(p: u64, dim: usize, what: &'static str) -> Result<()> {
    let order = (0..dim).try_fold(1u64, |acc, _| acc.checked_mul(p));
    match order {
        Some(n) if n <= DEFAULT_BUDGET => Ok(()),
        _ => Err(Error::too_large(what, format!("{p}^{dim}"), DEFAULT_BUDGET)),
    }
}

/// `R#G` on the basis `b_i p_σ` (index `σ·dim + i`), with
/// `(r p_σ)(s p_τ) = r s_{στ⁻¹} p_τ` and unit `Σ_σ p_σ`.
pub fn smash_product(r: &GradedAlgebra) -> Result<FiniteRing> {
    let g = r.group();
    let (d, n) = (r.dim(), g.order());
    ring_budget(r.p(), d * n, "smash product")?;
    let k = d * n;
    let mut c = vec![0u64; k * k * k];
    for sigma in 0..n {
        for i in 0..d {
            for tau in 0..n {
                let want = g.mul(sigma, g.inv(tau));
                for j in (0..d).filter(|&j| r.deg(j) == want) {
                    let (s, t) = (sigma * d + i, tau * d + j);
                    for l in 0..d {
                        c[(s * k + t) * k + tau * d + l] = r.c(i, j, l);
                    }
                }
            }
        }
    }
    let one = (0..n).flat_map(|_| r.one().iter().copied()).collect();
    FiniteRing::from_structure_constants(vec![r.p(); k], c, one)
}

/// `U = ⊕_σ R(σ)`.
pub fn suspension_sum(r: &GradedAlgebra) -> Result<GradedModule> {
    let a = Arc::new(r.clone());
    let reg = GradedModule::regular(&a);
    let parts = (0..r.group().order()).map(|s| reg.suspension(s)).collect::<Result<Vec<_>>>()?;
    GradedModule::direct_sum(&parts)
}

/// `End_{R-gr}(⊕_σ R(σ))` under composition.
pub fn end_gr_of_u(r: &GradedAlgebra) -> Result<FiniteRing> {
    ring_budget(r.p(), r.dim() * r.group().order(), "graded endomorphism ring")?;
    let u = suspension_sum(r)?;
    hom_space(&u, &u)?.ring()
}

/// `R_e` over itself and the basis of `R` spanned by `idx`, as a module over
/// `R_e` (ungraded).
fn over_identity_component(r: &GradedAlgebra, idx: &[usize]) -> Result<(GradedModule, GradedModule)> {
    let re = Arc::new(r.identity_component()?);
    let e_idx = r.component(r.group().identity());
    let action = e_idx
        .iter()
        .map(|&a| idx.iter().map(|&j| idx.iter().map(|&k| r.c(a, j, k)).collect()).collect())
        .collect();
    let m = GradedModule::new(re.clone(), vec![0; idx.len()], action)?;
    Ok((GradedModule::regular(&re), m))
}

/// `R_σ` is `R_e`-regular as a left `R_e`-module.
pub fn is_re_regular_component(r: &GradedAlgebra, sigma: usize) -> Result<bool> {
    if sigma >= r.group().order() {
        return Err(Error::BadGrading(format!("{sigma} is not a group element")));
    }
    let (re, m) = over_identity_component(r, &r.component(sigma))?;
    let fwd = hom_space(&re, &m)?;
    let back = hom_space(&m, &re)?;
    Ok(module::maps_regular(&fwd, &back, DEFAULT_BUDGET)?.is_none())
}

/// `End_{R_e}(R)`, with `R` a left `R_e`-module.
pub fn end_re_of_r(r: &GradedAlgebra) -> Result<FiniteRing> {
    let all: Vec<usize> = (0..r.dim()).collect();
    let (_, m) = over_identity_component(r, &all)?;
    let space = hom_space(&m, &m)?;
    ring_budget(r.p(), space.dim(), "R_e-endomorphism ring")?;
    space.ring()
}

/// `R_σ R_{σ⁻¹} = R_e` for every `σ`.
pub fn is_strongly_graded(r: &GradedAlgebra) -> bool {
    let g = r.group();
    let e_idx = r.component(g.identity());
    (0..g.order()).all(|s| {
        let products: Vec<Vec<u64>> = r
            .component(s)
            .iter()
            .flat_map(|&i| r.component(g.inv(s)).into_iter().map(move |j| (i, j)))
            .map(|(i, j)| {
                let v = r.mul_elems(&r.basis(i), &r.basis(j));
                e_idx.iter().map(|&k| v[k]).collect()
            })
            .collect();
        fp::rank(products, e_idx.len(), r.p()) == e_idx.len()
    })
}

/// A named member of the verification family.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub name: String,
    pub algebra: GradedAlgebra,
}

/// The deterministic family of graded algebras over F_2 and F_3 with
/// groups of order at most 3: fields, group algebras under natural and
/// trivial gradings, products of fields, truncated polynomial algebras with
/// `x` in each degree, upper triangular and full 2×2 matrix algebras with
/// elementary-matrix gradings (the full matrix algebra only over groups of
/// order at most 2), and a mixed product.
pub fn family() -> Vec<FamilyMember> {
    use algebras::*;
    let groups = [
        ("1", FiniteGroup::trivial()),
        ("C2", FiniteGroup::cyclic(2).expect("C2")),
        ("C3", FiniteGroup::cyclic(3).expect("C3")),
    ];
    let mut out = Vec::new();
    let mut add = |name: String, a: Result<GradedAlgebra>| {
        out.push(FamilyMember {
            name,
            algebra: a.expect("family members are valid"),
        });
    };
    for p in [2u64, 3] {
        for (gname, g) in &groups {
            add(format!("F{p} / {gname}"), product_of_fields(p, 1, g));
            add(format!("F{p}^2 / {gname}"), product_of_fields(p, 2, g));
            add(format!("F{p}^3 / {gname}"), product_of_fields(p, 3, g));
            for (hname, h) in &groups[1..] {
                add(format!("F{p}[{hname}] trivial / {gname}"), {
                    group_algebra(p, h, false).and_then(|a| a.regraded(g.clone(), vec![g.identity(); h.order()]))
                });
            }
            for x in 0..g.order() {
                add(format!("F{p}[x]/x^2, deg x = {x} / {gname}"), truncated_polynomial(p, 2, g, x));
                add(format!("F{p}[x]/x^3, deg x = {x} / {gname}"), truncated_polynomial(p, 3, g, x));
                add(format!("T2(F{p}), deg E12 = {x} / {gname}"), upper_triangular(p, g, x));
                // dimension 4: kept to groups of order ≤ 2 so rings stay within p^8
                if g.order() <= 2 {
                    add(format!("M2(F{p}), deg E12 = {x} / {gname}"), matrix_algebra(p, g, x));
                }
            }
        }
        for (hname, h) in &groups[1..] {
            add(format!("F{p}[{hname}] natural / {hname}"), group_algebra(p, h, true));
        }
        let c2 = &groups[1].1;
        add(
            format!("F{p} x F{p}[C2] natural / C2"),
            group_algebra(p, c2, true).and_then(|b| product(&product_of_fields(p, 1, c2)?, &b)),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::algebras::*;
    use super::*;

    fn c(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n).unwrap()
    }

    #[test]
    fn gr_regular_examples() {
        assert!(is_gr_regular(&group_algebra(2, &c(2), true).unwrap()).unwrap());
        let trivial = group_algebra(2, &c(2), false).unwrap();
        assert!(!is_gr_regular(&trivial).unwrap());
        let (deg, x) = gr_regular_counterexample(&trivial, 100).unwrap().unwrap();
        assert_eq!((deg, x), (0, vec![1, 1]));
        assert!(is_gr_regular(&product_of_fields(2, 2, &c(2)).unwrap()).unwrap());
    }

    #[test]
    fn suspension_regular_examples() {
        assert!(is_suspension_regular(&group_algebra(2, &c(2), true).unwrap(), 1).unwrap());
        assert!(!is_suspension_regular(&group_algebra(2, &c(2), false).unwrap(), 0).unwrap());
        assert!(is_suspension_regular(&product_of_fields(3, 1, &c(1)).unwrap(), 0).unwrap());
    }

    #[test]
    fn smash_examples() {
        let f2 = product_of_fields(2, 1, &c(1)).unwrap();
        let s = smash_product(&f2).unwrap();
        assert_eq!(s.order(), 2);
        let f2c2 = product_of_fields(2, 1, &c(2)).unwrap();
        let s = smash_product(&f2c2).unwrap();
        assert_eq!(s.order(), 4);
        assert!(s.is_commutative() && s.is_vn_regular().unwrap());
        assert_eq!(s.jacobson_radical().unwrap(), vec![0]);
        let s = smash_product(&group_algebra(2, &c(2), true).unwrap()).unwrap();
        assert_eq!(s.order(), 16);
        assert!(s.is_vn_regular().unwrap());
    }

    #[test]
    fn end_gr_examples() {
        let e = end_gr_of_u(&product_of_fields(2, 1, &c(2)).unwrap()).unwrap();
        assert_eq!(e.order(), 4);
        assert!(e.is_vn_regular().unwrap());
        assert_eq!(end_gr_of_u(&group_algebra(2, &c(2), true).unwrap()).unwrap().order(), 16);
        let r = truncated_polynomial(3, 2, &c(1), 0).unwrap();
        let e = end_gr_of_u(&r).unwrap();
        assert_eq!(e.order(), 9);
        assert_eq!(e.is_vn_regular().unwrap(), r.to_ring().unwrap().is_vn_regular().unwrap());
    }

    #[test]
    fn component_examples() {
        assert!(is_re_regular_component(&group_algebra(2, &c(2), true).unwrap(), 1).unwrap());
        assert!(!is_re_regular_component(&truncated_polynomial(2, 2, &c(1), 0).unwrap(), 0).unwrap());
        // R_g = 0 under the trivial grading
        assert!(is_re_regular_component(&product_of_fields(2, 1, &c(2)).unwrap(), 1).unwrap());
    }

    #[test]
    fn strongly_graded_examples() {
        assert!(is_strongly_graded(&group_algebra(3, &c(3), true).unwrap()));
        assert!(is_strongly_graded(&matrix_algebra(2, &c(2), 1).unwrap()));
        assert!(!is_strongly_graded(&product_of_fields(2, 1, &c(2)).unwrap()));
        assert!(!is_strongly_graded(&upper_triangular(2, &c(2), 1).unwrap()));
    }

    #[test]
    fn family_is_deterministic_and_varied() {
        let a = family();
        let b = family();
        assert_eq!(a.len(), b.len());
        assert!(a.iter().zip(&b).all(|(x, y)| x.name == y.name && x.algebra == y.algebra));
        let regular = a.iter().filter(|m| is_gr_regular(&m.algebra).unwrap()).count();
        assert!(regular > 0 && regular < a.len());
        assert!(a.iter().any(|m| is_strongly_graded(&m.algebra)));
    }
}
