use num_integer::Integer;
use num_traits::ToPrimitive;

use super::ring::{FiniteRing, Linear, Product, TABLE_LIMIT};
use crate::abcat::{
    compose, direct_sum, factor_through_image, is_epi, is_mono, kernel, FpObject, HomSet, Morphism, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};

/// `End(M)` in structured form together with its hom-set: ring element `i`
/// is morphism `homs.get(i)`.
pub(crate) fn end_algebra(m: &FpObject, budget: u64) -> Result<(FiniteRing, HomSet)> {
    let homs = HomSet::new(m, m, budget)?;
    let orders: Vec<u64> = match m {
        FpObject::Module(module) => module
            .orders()
            .iter()
            .map(|o| o.to_u64().filter(|&o| o > 0).ok_or(Error::NotFinite))
            .collect::<Result<_>>()?,
        FpObject::Vect { ring, dim } => vec![ring.modulus().ok_or(Error::NotFinite)?; *dim],
        FpObject::FinSet(_) => return Err(Error::NotAdditive),
    };
    let n = orders.len();
    let mut additive = vec![0; n * n];
    let mut step = vec![0; n * n];
    let mut one = vec![0; n * n];
    for j in 0..n {
        for i in 0..n {
            let g = orders[i].gcd(&orders[j]);
            additive[j * n + i] = g;
            step[j * n + i] = orders[i] / g;
        }
        one[j * n + j] = 1;
    }
    let lin = Linear::new(additive, Product::Endo { n, orders, step }, one)?;
    Ok((FiniteRing::from_linear(lin, None)?, homs))
}

/// `End(M)` under composition and pointwise addition. Rings of at most
/// [`TABLE_LIMIT`] elements come back as tables labelled by their normal
/// matrices; larger ones in structured form.
pub fn end_ring(m: &FpObject) -> Result<FiniteRing> {
    end_ring_with_budget(m, DEFAULT_BUDGET)
}

pub fn end_ring_with_budget(m: &FpObject, budget: u64) -> Result<FiniteRing> {
    let (ring, homs) = end_algebra(m, budget)?;
    if ring.order() > TABLE_LIMIT {
        return Ok(ring);
    }
    let mut table = ring.to_table()?;
    let labels = ring
        .table_positions()
        .into_iter()
        .map(|i| homs.get(i).normal().expect("additive").to_string())
        .collect();
    table.set_labels(labels);
    Ok(table)
}

/// Outcome of [`central_geninv`].
#[derive(Clone, Debug)]
pub struct CentralInverse {
    /// Least-index central `β` with `α β α = α`.
    pub beta: Option<Morphism>,
    /// Whether `M = Im(α) ⊕ Ker(α)`.
    pub decomposed: bool,
}

/// For a central endomorphism `α`, searches the center of `End(M)` for `β`
/// with `α β α = α` and independently decides whether image and kernel of
/// `α` decompose `M`.
pub fn central_geninv(alpha: &Morphism) -> Result<CentralInverse> {
    central_geninv_with_budget(alpha, DEFAULT_BUDGET)
}

pub fn central_geninv_with_budget(alpha: &Morphism, budget: u64) -> Result<CentralInverse> {
    if !alpha.is_additive() {
        return Err(Error::NotAdditive);
    }
    if !alpha.is_endomorphism() {
        return Err(Error::shape("central_geninv needs an endomorphism"));
    }
    let (ring, homs) = end_algebra(alpha.domain(), budget)?;
    let a = homs.index_of(alpha).expect("endomorphism is enumerated");
    let center = ring.center_elements();
    if center.binary_search(&a).is_err() {
        return Err(Error::NotCentral);
    }
    let beta = center
        .iter()
        .find(|&&b| ring.mul(ring.mul(a, b), a) == a)
        .map(|&b| homs.get(b));
    Ok(CentralInverse {
        beta,
        decomposed: image_kernel_decompose(alpha)?,
    })
}

/// Every endomorphism of `M` commuting with all others, in hom-set order.
pub fn central_endomorphisms(m: &FpObject, budget: u64) -> Result<Vec<Morphism>> {
    let (ring, homs) = end_algebra(m, budget)?;
    Ok(ring.center_elements().into_iter().map(|c| homs.get(c)).collect())
}

/// `Im(α) ∩ Ker(α) = 0` (α restricted to its image is mono) and
/// `Im(α) + Ker(α) = M` (the two inclusions are jointly epi).
pub fn image_kernel_decompose(alpha: &Morphism) -> Result<bool> {
    let (j, _) = factor_through_image(alpha)?;
    if !is_mono(&compose(alpha, &j)?)? {
        return Ok(false);
    }
    let k = kernel(alpha)?;
    let sum = direct_sum(&[j.domain().clone(), k.domain().clone()])?;
    let joint = compose(&j, &sum.projections[0])?.checked_add(&compose(&k, &sum.projections[1])?)?;
    is_epi(&joint)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Ring;
    use crate::matops::ExactMatrix;

    fn z(orders: &[u64]) -> FpObject {
        FpObject::cyclic(Ring::Integer, orders).unwrap()
    }

    fn times(m: &FpObject, k: i64) -> Morphism {
        let n = m.coords();
        let mut a = ExactMatrix::zeros(Ring::Integer, n, n);
        for i in 0..n {
            a.set(i, i, Ring::Integer.from_i64(k));
        }
        Morphism::new(m.clone(), m.clone(), a).unwrap()
    }

    #[test]
    fn end_ring_examples() {
        let e = end_ring(&z(&[4])).unwrap();
        assert_eq!(e.order(), 4);
        assert!(e.is_commutative());
        assert_eq!(e.jacobson_radical().unwrap().len(), 2);
        let trivial = end_ring(&z(&[])).unwrap();
        assert_eq!((trivial.order(), trivial.one()), (1, 0));
        let m2 = end_ring(&z(&[2, 2])).unwrap();
        assert_eq!(m2.order(), 16);
        assert!(!m2.is_commutative());
        assert!(m2.is_semiprime());
        assert_eq!(m2.center().unwrap().order(), 2);
        assert!(m2.labels().unwrap()[1].contains('1'));
    }

    #[test]
    fn end_ring_multiplication_is_composition() {
        let m = z(&[2, 4]);
        let (ring, homs) = end_algebra(&m, DEFAULT_BUDGET).unwrap();
        assert_eq!(ring.order(), homs.len());
        for a in 0..homs.len() {
            for b in 0..homs.len() {
                let ab = compose(&homs.get(a), &homs.get(b)).unwrap();
                assert_eq!(homs.index_of(&ab), Some(ring.mul(a, b)));
                let sum = homs.get(a).checked_add(&homs.get(b)).unwrap();
                assert_eq!(homs.index_of(&sum), Some(ring.add(a, b)));
            }
        }
        assert_eq!(homs.get(ring.one()), Morphism::identity(&m));
    }

    #[test]
    fn large_end_ring_stays_structured() {
        let e = end_ring(&z(&[2, 2, 2, 2])).unwrap();
        assert_eq!(e.order(), 65536);
        assert!(!e.is_table());
        assert_eq!(e.center_elements().len(), 2);
    }

    #[test]
    fn central_examples() {
        let z4 = z(&[4]);
        let r = central_geninv(&times(&z4, 2)).unwrap();
        assert!(r.beta.is_none() && !r.decomposed);
        let z6 = z(&[6]);
        let three = times(&z6, 3);
        let r = central_geninv(&three).unwrap();
        // ×1, ×3 and ×5 all work; the search returns the least index
        assert_eq!(r.beta, Some(times(&z6, 1)));
        assert_eq!(compose(&three, &compose(&three, &three).unwrap()).unwrap(), three);
        assert!(r.decomposed);
        let r = central_geninv(&times(&z6, 0)).unwrap();
        assert!(r.beta.unwrap().is_zero());
        assert!(r.decomposed);
    }

    #[test]
    fn non_central_is_rejected() {
        let m = z(&[2, 2]);
        let a = ExactMatrix::from_rows(Ring::Integer, &[vec![1, 0], vec![0, 0]]);
        let e = Morphism::new(m.clone(), m, a).unwrap();
        assert_eq!(central_geninv(&e).unwrap_err(), Error::NotCentral);
    }
}
