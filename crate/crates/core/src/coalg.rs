//! Finite-dimensional coalgebras over F_p, handled through their dual
//! algebras: right `C`-comodules are left `C*`-modules.

use std::sync::Arc;

use serde_json::{json, Value as Json};

use crate::abcat::DEFAULT_BUDGET;
use crate::error::{Error, Result};
use crate::graded::{algebras, hom_space, FiniteGroup, GradedAlgebra, GradedModule};

/// A coalgebra `C` stored as its dual algebra `A = C*`; the
/// comultiplication is the transpose of the multiplication of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCoalgebra {
    dual: Arc<GradedAlgebra>,
}

impl FiniteCoalgebra {
    /// `dual` must be trivially graded by the trivial group.
    pub fn from_dual(dual: GradedAlgebra) -> Result<Self> {
        if dual.group().order() != 1 {
            return Err(Error::BadGrading("a coalgebra's dual algebra carries the trivial grading".into()));
        }
        Ok(FiniteCoalgebra { dual: Arc::new(dual) })
    }

    pub fn dual(&self) -> &GradedAlgebra {
        &self.dual
    }

    pub fn dim(&self) -> usize {
        self.dual.dim()
    }

    /// `C` as a left `A`-module: `(a·φ)(x) = φ(x a)`, so on the dual basis
    /// `b_i·φ_j = Σ_l c[l][i][j] φ_l`.
    pub fn as_module(&self) -> GradedModule {
        let d = self.dim();
        let action = (0..d)
            .map(|i| (0..d).map(|j| (0..d).map(|l| self.dual.c(l, i, j)).collect()).collect())
            .collect();
        GradedModule::new(self.dual.clone(), vec![0; d], action).expect("the dual action is a module")
    }

    pub fn to_json(&self) -> Json {
        json!({"dual": self.dual.to_json()})
    }

    pub fn from_json(v: &Json) -> Result<Self> {
        let d = v.get("dual").ok_or_else(|| Error::spec("coalgebra needs a \"dual\" algebra"))?;
        Self::from_dual(GradedAlgebra::from_json(d)?)
    }
}

/// `J(C*) = 0`.
pub fn is_cosemisimple(c: &FiniteCoalgebra) -> Result<bool> {
    let ring = c.dual.to_ring()?;
    Ok(ring.jacobson_radical()? == vec![0])
}

/// Whether the `A`-module `C` is `A`-regular: every `f: A → C` has some
/// `g: C → A` with `f g f = f`, both ranging over all module maps.
pub fn is_regular_comodule_self(c: &FiniteCoalgebra) -> Result<bool> {
    let a = GradedModule::regular(&c.dual);
    let m = c.as_module();
    let fwd = hom_space(&a, &m)?;
    let back = hom_space(&m, &a)?;
    let gs = back.enumerate(DEFAULT_BUDGET)?;
    for f in fwd.enumerate(DEFAULT_BUDGET)? {
        if !gs.iter().any(|g| f.after(g).after(&f) == f) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// If `J(C*)` is a two-sided ideal, the least `k` with `J^k = 0`
/// (computed as iterated additive spans of products); `None` when it is
/// not an ideal or the powers stall before reaching zero.
pub fn radical_nilpotency(c: &FiniteCoalgebra) -> Result<Option<usize>> {
    let ring = c.dual.to_ring()?;
    let j = ring.jacobson_radical()?;
    let n = ring.order() as usize;
    let mut in_j = vec![false; n];
    for &x in &j {
        in_j[x as usize] = true;
    }
    let ideal = (0..ring.order()).all(|a| j.iter().all(|&x| in_j[ring.mul(a, x) as usize] && in_j[ring.mul(x, a) as usize]));
    if !ideal {
        return Ok(None);
    }
    let span = |gens: Vec<u64>| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0u64];
        let mut out = vec![0u64];
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = ring.add(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    };
    let mut power = j.clone();
    let mut k = 1;
    while power != vec![0] {
        let next = span(power.iter().flat_map(|&a| j.iter().map(move |&b| (a, b))).map(|(a, b)| ring.mul(a, b)).collect());
        if next == power {
            return Ok(None);
        }
        power = next;
        k += 1;
    }
    Ok(Some(k))
}

/// Whether the two decisions agree.
pub fn thm_cosemisimple_equiv(c: &FiniteCoalgebra) -> Result<bool> {
    Ok(is_cosemisimple(c)? == is_regular_comodule_self(c)?)
}

/// A named coalgebra of the verification family.
#[derive(Clone, Debug)]
pub struct CoalgebraMember {
    pub name: String,
    pub coalgebra: FiniteCoalgebra,
}

/// Duals of: products of fields, group algebras of C2 and C3, truncated
/// polynomial algebras, upper triangular 2×2 matrices over F_2 and F_3,
/// and full 2×2 matrices over F_2 and F_3.
pub fn family() -> Vec<CoalgebraMember> {
    use algebras::*;
    let one = FiniteGroup::trivial();
    let mut out = Vec::new();
    for p in [2u64, 3] {
        let mut add = |name: String, a: Result<GradedAlgebra>| {
            out.push(CoalgebraMember {
                name,
                coalgebra: FiniteCoalgebra::from_dual(a.expect("family members are valid")).expect("trivial grading"),
            });
        };
        for k in 1..=3 {
            add(format!("F{p}^{k}"), product_of_fields(p, k, &one));
        }
        for n in [2, 3] {
            let g = FiniteGroup::cyclic(n).expect("cyclic group");
            add(
                format!("F{p}[C{n}]"),
                group_algebra(p, &g, false).and_then(|a| a.regraded(one.clone(), vec![0; n])),
            );
            add(format!("F{p}[x]/x^{n}"), truncated_polynomial(p, n, &one, 0));
        }
        add(format!("T2(F{p})"), upper_triangular(p, &one, 0));
        add(format!("M2(F{p})"), matrix_algebra(p, &one, 0));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual(name: &str) -> FiniteCoalgebra {
        family().into_iter().find(|m| m.name == name).unwrap().coalgebra
    }

    #[test]
    fn cosemisimple_examples() {
        assert!(is_cosemisimple(&dual("F2^2")).unwrap());
        assert!(!is_cosemisimple(&dual("F2[x]/x^2")).unwrap());
        assert!(is_cosemisimple(&dual("M2(F3)")).unwrap());
    }

    #[test]
    fn regular_comodule_examples() {
        assert!(is_regular_comodule_self(&dual("F2^2")).unwrap());
        assert!(!is_regular_comodule_self(&dual("F2[x]/x^2")).unwrap());
        assert!(is_regular_comodule_self(&dual("F2^1")).unwrap());
        for name in ["F2[x]/x^2", "F2^2", "F2^1"] {
            assert!(thm_cosemisimple_equiv(&dual(name)).unwrap());
        }
    }

    #[test]
    fn family_equivalence_and_radicals() {
        for m in family() {
            let c = &m.coalgebra;
            assert!(thm_cosemisimple_equiv(c).unwrap(), "{}", m.name);
            assert!(radical_nilpotency(c).unwrap().is_some(), "{}", m.name);
            if is_cosemisimple(c).unwrap() {
                assert!(c.dual().to_ring().unwrap().is_vn_regular().unwrap(), "{}", m.name);
            }
        }
        assert_eq!(radical_nilpotency(&dual("F3[x]/x^3")).unwrap(), Some(3));
        assert_eq!(radical_nilpotency(&dual("F2[C2]")).unwrap(), Some(2));
        assert_eq!(radical_nilpotency(&dual("M2(F2)")).unwrap(), Some(1));
    }

    #[test]
    fn dual_module_is_a_module() {
        for m in family() {
            // construction validates the module axioms
            assert_eq!(m.coalgebra.as_module().dim(), m.coalgebra.dim());
        }
    }

    #[test]
    fn json_round_trip() {
        let c = dual("T2(F3)");
        assert_eq!(FiniteCoalgebra::from_json(&c.to_json()).unwrap(), c);
        let graded = algebras::group_algebra(2, &FiniteGroup::cyclic(2).unwrap(), true).unwrap();
        assert!(FiniteCoalgebra::from_dual(graded).is_err());
    }
}
