use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::morphism::int_matrix;
use super::ops::submodule;
use super::{compose, FpObject, Morphism};
use crate::error::{Error, Result};
use crate::exact::{factorize, Ring};

fn small(d: &BigInt) -> Result<u64> {
    d.to_u64().ok_or_else(|| Error::too_large("cyclic summand", d, u64::MAX))
}

fn p_part(mut d: u64, p: u64) -> u64 {
    let mut out = 1;
    while d % p == 0 {
        d /= p;
        out *= p;
    }
    out
}

/// Whether a module over Z/n is projective: each p-primary invariant factor
/// must be the full p-power dividing n.
pub fn is_projective(m: &FpObject) -> Result<bool> {
    let module = m.as_module().ok_or(Error::WrongBase { expected: "Zn:<n>" })?;
    let Ring::Modular(n) = module.base() else {
        return Err(Error::WrongBase { expected: "Zn:<n>" });
    };
    for (p, k) in factorize(n) {
        let full = p.pow(k);
        for d in module.invariant_factors() {
            let part = p_part(small(&d)?, p);
            if part != 1 && part != full {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One module per isomorphism class of finite modules over `base` (Z or
/// Z/n) of order at most `max_order`, smallest orders first. Each is
/// `⊕ Z/d_i` with `d_1 | d_2 | …` (and `d_k | n` over Z/n); the zero module
/// comes first.
pub fn finite_modules(base: Ring, max_order: u64) -> Result<Vec<FpObject>> {
    let bound = match base {
        Ring::Integer => None,
        Ring::Modular(n) => Some(n),
        _ => return Err(Error::WrongBase { expected: "Z or Zn:<n>" }),
    };
    let mut chains: Vec<Vec<u64>> = Vec::new();
    fn extend(chain: &mut Vec<u64>, order: u64, max: u64, bound: Option<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(chain.clone());
        let last = chain.last().copied().unwrap_or(1);
        let mut d = last.max(2);
        while order * d <= max {
            if d % last == 0 && bound.map_or(true, |n| n % d == 0) {
                chain.push(d);
                extend(chain, order * d, max, bound, out);
                chain.pop();
            }
            d += 1;
        }
    }
    extend(&mut Vec::new(), 1, max_order, bound, &mut chains);
    chains.sort_by_key(|c| (c.iter().product::<u64>(), c.len(), c.clone()));
    chains.iter().map(|c| FpObject::cyclic(base, c)).collect()
}

/// Radical and socle of a finite object, as inclusions.
#[derive(Clone, Debug)]
pub struct RadicalSocle {
    pub radical: Morphism,
    pub socle: Morphism,
}

/// `J(M)`, the intersection of the maximal subobjects, and `s(M)`, the sum
/// of the simple ones. On a cyclic summand `Z/d` they are `rad(d)·Z/d` and
/// `(d/rad(d))·Z/d` where `rad(d)` is the product of the primes dividing `d`.
pub fn radical_and_socle(m: &FpObject) -> Result<RadicalSocle> {
    let obj = Arc::new(m.clone());
    match m {
        FpObject::Vect { ring, .. } => {
            let zero = Arc::new(FpObject::Vect { ring: *ring, dim: 0 });
            Ok(RadicalSocle {
                radical: Morphism::zero_arc(zero, obj.clone())?,
                socle: Morphism::identity_arc(&obj),
            })
        }
        FpObject::Module(module) => {
            if !module.is_finite() {
                return Err(Error::NotFinite);
            }
            let mut rad = Vec::new();
            for d in module.orders() {
                let d = small(d)?;
                rad.push(factorize(d).iter().map(|(p, _)| p).product::<u64>());
            }
            let k = module.dim();
            let orders: Vec<u64> = module.orders().iter().map(small).collect::<Result<_>>()?;
            let diag = |f: &dyn Fn(usize) -> u64| {
                int_matrix(k, k, |i, j| if i == j { BigInt::from(f(i)) } else { BigInt::zero() })
            };
            let (radical, _) = submodule(&obj, &diag(&|i| rad[i]))?;
            let (socle, _) = submodule(&obj, &diag(&|i| orders[i] / rad[i]))?;
            Ok(RadicalSocle { radical, socle })
        }
        FpObject::FinSet(_) => Err(Error::NotAdditive),
    }
}

/// Generalized inverse of a map of finite sets: each image point goes to
/// its least preimage, everything else to element 0, and the result `g` is
/// replaced by `g ∘ f ∘ g` so that both defining identities hold.
pub fn geninv_function(f: &Morphism) -> Result<Morphism> {
    let map = f.map_table().ok_or_else(|| Error::spec("expected a map of finite sets"))?;
    let (n, m) = (f.domain().coords(), f.codomain().coords());
    if n == 0 && m > 0 {
        return Err(Error::EmptyDomain);
    }
    let mut g = vec![usize::MAX; m];
    for (a, &b) in map.iter().enumerate() {
        if g[b] == usize::MAX {
            g[b] = a;
        }
    }
    for x in &mut g {
        if *x == usize::MAX {
            *x = 0;
        }
    }
    let g = Morphism::map(m, n, g)?;
    let h = compose(&g, &compose(f, &g)?)?;
    debug_assert_eq!(compose(f, &compose(&h, f)?)?, *f);
    debug_assert_eq!(compose(&h, &compose(f, &h)?)?, h);
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abcat::{hom_enumerate, is_mono, DEFAULT_BUDGET};

    fn over(n: u64, orders: &[u64]) -> FpObject {
        FpObject::cyclic(Ring::modular(n).unwrap(), orders).unwrap()
    }

    fn z(orders: &[u64]) -> FpObject {
        FpObject::cyclic(Ring::Integer, orders).unwrap()
    }

    #[test]
    fn module_classes() {
        // abelian groups of order 1..=16: 1,1,1,2,1,1,1,3,2,1,1,2,1,1,1,5
        let groups = finite_modules(Ring::Integer, 16).unwrap();
        assert_eq!(groups.len(), 25);
        assert!(groups[0].is_zero());
        let over4 = finite_modules(Ring::modular(4).unwrap(), 16).unwrap();
        assert_eq!(over4.len(), 9);
        assert!(over4.contains(&over(4, &[2, 2, 2, 2])));
        assert!(finite_modules(Ring::Rational, 4).is_err());
    }

    #[test]
    fn projectivity_examples() {
        assert!(is_projective(&over(4, &[4])).unwrap());
        assert!(!is_projective(&over(4, &[2])).unwrap());
        assert!(is_projective(&over(6, &[2])).unwrap());
        assert!(is_projective(&over(12, &[3, 12])).unwrap());
        assert!(!is_projective(&over(12, &[6])).unwrap());
        assert_eq!(is_projective(&z(&[4])).unwrap_err(), Error::WrongBase { expected: "Zn:<n>" });
    }

    #[test]
    fn radical_and_socle_examples() {
        let rs = radical_and_socle(&z(&[4])).unwrap();
        assert_eq!(rs.radical.domain(), &z(&[2]));
        assert_eq!(rs.radical.matrix().unwrap().get(0, 0).to_i64(), Some(2));
        assert_eq!(rs.socle.domain(), &z(&[2]));
        let rs = radical_and_socle(&z(&[2, 2])).unwrap();
        assert!(rs.radical.domain().is_zero());
        assert!(rs.socle.is_identity() || rs.socle.domain() == &z(&[2, 2]));
        let rs = radical_and_socle(&z(&[8])).unwrap();
        assert_eq!(rs.socle.domain(), &z(&[2]));
        assert_eq!(rs.socle.matrix().unwrap().get(0, 0).to_i64(), Some(4));
        assert!(is_mono(&rs.radical).unwrap() && is_mono(&rs.socle).unwrap());
        assert_eq!(radical_and_socle(&z(&[0])).unwrap_err(), Error::NotFinite);
    }

    /// Brute-force oracle: the subgroup killed by every map to a simple
    /// group, and the subgroup generated by elements of prime order.
    #[test]
    fn radical_matches_maps_to_simple_groups() {
        for orders in [vec![4u64], vec![2, 4], vec![12], vec![2, 6], vec![3, 9], vec![8]] {
            let m = z(&orders);
            let j = radical_and_socle(&m).unwrap().radical;
            let mut expect_order = 1u64;
            let total: u64 = orders.iter().product();
            // |M / J| = product over primes of p^(number of p-primary summands)
            let mut quotient = 1u64;
            for &d in &orders {
                for (p, _) in factorize(d) {
                    quotient *= p;
                }
            }
            expect_order *= total / quotient;
            assert_eq!(j.domain().order().unwrap(), BigInt::from(expect_order), "{orders:?}");
            for p in [2u64, 3, 5] {
                for f in hom_enumerate(&m, &z(&[p]), DEFAULT_BUDGET).unwrap() {
                    assert!(compose(&f, &j).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn set_generalized_inverses() {
        let f = Morphism::map(2, 1, vec![0, 0]).unwrap();
        assert_eq!(geninv_function(&f).unwrap().map_table().unwrap(), &[0]);
        let f = Morphism::map(3, 3, vec![2, 0, 1]).unwrap();
        assert_eq!(geninv_function(&f).unwrap().map_table().unwrap(), &[1, 2, 0]);
        let f = Morphism::map(1, 2, vec![0]).unwrap();
        assert_eq!(geninv_function(&f).unwrap().map_table().unwrap(), &[0, 0]);
        let empty = Morphism::map(0, 0, vec![]).unwrap();
        assert_eq!(geninv_function(&empty).unwrap(), empty);
        let bad = Morphism::map(0, 2, vec![]).unwrap();
        assert_eq!(geninv_function(&bad).unwrap_err(), Error::EmptyDomain);
    }

    #[test]
    fn set_identities_exhaustive() {
        for n in 1..=3 {
            for m in 0..=3 {
                for f in hom_enumerate(&FpObject::finset(n), &FpObject::finset(m), 1000).unwrap() {
                    let h = geninv_function(&f).unwrap();
                    assert_eq!(compose(&f, &compose(&h, &f).unwrap()).unwrap(), f);
                    assert_eq!(compose(&h, &compose(&f, &h).unwrap()).unwrap(), h);
                }
            }
        }
    }
}
