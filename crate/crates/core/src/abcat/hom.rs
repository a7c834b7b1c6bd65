use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{FpObject, Morphism};
use crate::error::{Error, Result};
use crate::exact::{Ring, Scalar};
use crate::matops::ExactMatrix;

/// Default cap on the size of an enumerated hom-set.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// A finite hom-set listed in a fixed order: the matrix entries form an
/// odometer whose first column is most significant and, within a column,
/// whose first row is most significant. Element 0 is the zero morphism.
#[derive(Clone, Debug)]
pub struct HomSet {
    domain: Arc<FpObject>,
    codomain: Arc<FpObject>,
    ring: Ring,
    rows: usize,
    cols: usize,
    /// Allowed values of each entry, column-major.
    choices: Vec<Vec<Scalar>>,
    len: u64,
}

/// Cardinality of `Hom(u, m)`.
pub fn hom_count(u: &FpObject, m: &FpObject) -> Result<BigInt> {
    let (_, choices) = entry_choices(u, m)?;
    Ok(choices.iter().map(|c| BigInt::from(c.len())).product())
}

fn entry_choices(u: &FpObject, m: &FpObject) -> Result<(Ring, Vec<Vec<Scalar>>)> {
    if !u.same_category(m) {
        return Err(Error::MixedVariant);
    }
    let z = Ring::Integer;
    match (u, m) {
        (FpObject::FinSet(a), FpObject::FinSet(b)) => {
            let vals: Vec<Scalar> = (0..*b).map(|i| z.from_i64(i as i64)).collect();
            Ok((z, vec![vals; *a]))
        }
        (FpObject::Vect { ring, dim: a }, FpObject::Vect { dim: b, .. }) => {
            let entries = a * b;
            if entries == 0 {
                return Ok((*ring, Vec::new()));
            }
            let vals = ring.enumerate().ok_or(Error::InfiniteHom)?;
            Ok((*ring, vec![vals; entries]))
        }
        (FpObject::Module(u), FpObject::Module(m)) => {
            let mut choices = Vec::with_capacity(u.dim() * m.dim());
            for o in u.orders() {
                for d in m.orders() {
                    let vals = if d.is_zero() {
                        if o.is_zero() {
                            return Err(Error::InfiniteHom);
                        }
                        vec![BigInt::zero()]
                    } else {
                        let g = if o.is_zero() { d.clone() } else { o.gcd(d) };
                        let step = d / &g;
                        let g = g.to_u64().ok_or(Error::NotFinite)?;
                        (0..g).map(|k| &step * BigInt::from(k)).collect()
                    };
                    choices.push(vals.iter().map(|v| z.from_bigint(v)).collect());
                }
            }
            Ok((z, choices))
        }
        _ => unreachable!("categories checked above"),
    }
}

impl HomSet {
    pub fn new(u: &FpObject, m: &FpObject, budget: u64) -> Result<Self> {
        let (ring, choices) = entry_choices(u, m)?;
        let total: BigInt = choices.iter().map(|c| BigInt::from(c.len())).product();
        let len = total
            .to_u64()
            .filter(|&n| n <= budget)
            .ok_or_else(|| Error::too_large("hom-set", &total, budget))?;
        let (rows, cols) = match (u, m) {
            (FpObject::FinSet(a), _) => (1, *a),
            _ => (m.coords(), u.coords()),
        };
        Ok(HomSet {
            domain: Arc::new(u.clone()),
            codomain: Arc::new(m.clone()),
            ring,
            rows,
            cols,
            choices,
            len,
        })
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn domain(&self) -> &FpObject {
        &self.domain
    }

    pub fn codomain(&self) -> &FpObject {
        &self.codomain
    }

    /// The morphism at position `index` of the enumeration order.
    pub fn get(&self, mut index: u64) -> Morphism {
        assert!(index < self.len, "hom-set index out of range");
        let mut digits = vec![0usize; self.choices.len()];
        for (k, c) in self.choices.iter().enumerate().rev() {
            let n = c.len() as u64;
            digits[k] = (index % n) as usize;
            index /= n;
        }
        self.build(&digits)
    }

    fn build(&self, digits: &[usize]) -> Morphism {
        if let FpObject::FinSet(_) = *self.domain {
            let FpObject::FinSet(b) = *self.codomain else { unreachable!() };
            return Morphism::map(self.cols, b, digits.to_vec()).expect("valid table");
        }
        let mut m = ExactMatrix::zeros(self.ring, self.rows, self.cols);
        for (k, &d) in digits.iter().enumerate() {
            let (i, j) = (k % self.rows, k / self.rows);
            m.set(i, j, self.choices[k][d].clone());
        }
        Morphism::from_normal(self.domain.clone(), self.codomain.clone(), m)
    }

    pub fn iter(&self) -> impl Iterator<Item = Morphism> + '_ {
        let mut digits = vec![0usize; self.choices.len()];
        let mut remaining = self.len;
        std::iter::from_fn(move || {
            if remaining == 0 {
                return None;
            }
            remaining -= 1;
            let out = self.build(&digits);
            for k in (0..digits.len()).rev() {
                digits[k] += 1;
                if digits[k] < self.choices[k].len() {
                    break;
                }
                digits[k] = 0;
            }
            Some(out)
        })
    }
}

/// Every morphism `u → m` in the fixed enumeration order.
pub fn hom_enumerate(u: &FpObject, m: &FpObject, budget: u64) -> Result<Vec<Morphism>> {
    let h = HomSet::new(u, m, budget)?;
    Ok(h.iter().collect())
}

impl HomSet {
    /// Position of `f` in the enumeration, if it belongs to this hom-set.
    pub fn index_of(&self, f: &Morphism) -> Option<u64> {
        if f.domain() != self.domain() || f.codomain() != self.codomain() {
            return None;
        }
        let mut index = 0u64;
        for (k, c) in self.choices.iter().enumerate() {
            let v = match f.map_table() {
                Some(t) => self.ring.from_i64(t[k] as i64),
                None => f.normal().unwrap().get(k % self.rows, k / self.rows).clone(),
            };
            let d = c.iter().position(|x| *x == v)? as u64;
            index = index * c.len() as u64 + d;
        }
        Some(index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abcat::compose;
    use std::collections::HashSet;

    fn z(orders: &[u64]) -> FpObject {
        FpObject::cyclic(Ring::Integer, orders).unwrap()
    }

    #[test]
    fn cyclic_hom_counts() {
        assert_eq!(hom_enumerate(&z(&[4]), &z(&[2]), DEFAULT_BUDGET).unwrap().len(), 2);
        let h = hom_enumerate(&z(&[2]), &z(&[3]), DEFAULT_BUDGET).unwrap();
        assert_eq!(h.len(), 1);
        assert!(h[0].is_zero());
        assert_eq!(hom_enumerate(&z(&[6]), &z(&[4]), DEFAULT_BUDGET).unwrap().len(), 2);
    }

    #[test]
    fn gcd_formula_up_to_24() {
        for m in 1..=24u64 {
            for n in 1..=24u64 {
                let h = hom_enumerate(&z(&[m]), &z(&[n]), DEFAULT_BUDGET).unwrap();
                assert_eq!(h.len() as u64, m.gcd(&n), "Hom(Z/{m}, Z/{n})");
            }
        }
    }

    #[test]
    fn enumeration_is_duplicate_free_and_closed() {
        let u = z(&[2, 4]);
        let m = z(&[2, 2, 4]);
        let hs = HomSet::new(&u, &m, DEFAULT_BUDGET).unwrap();
        let all: Vec<Morphism> = hs.iter().collect();
        assert_eq!(all.len() as u64, hs.len());
        let distinct: HashSet<String> = all.iter().map(|f| f.normal().unwrap().to_string()).collect();
        assert_eq!(distinct.len(), all.len());
        assert!(all[0].is_zero());
        for (k, f) in all.iter().enumerate() {
            assert_eq!(hs.index_of(f), Some(k as u64));
            assert_eq!(&hs.get(k as u64), f);
        }
        // sums of morphisms stay in the list
        let a = &all[5];
        let b = &all[17];
        assert!(hs.index_of(&a.checked_add(b).unwrap()).is_some());
        let id = Morphism::identity(&m);
        assert!(hs.index_of(&compose(&id, a).unwrap()).is_some());
    }

    #[test]
    fn budget_and_infinite_cases() {
        let big = z(&[2, 2, 2, 2, 2]);
        match HomSet::new(&big, &big, 1000) {
            Err(Error::TooLarge { cardinality, budget, .. }) => {
                assert_eq!(cardinality, "33554432");
                assert_eq!(budget, 1000);
            }
            other => panic!("expected TooLarge, got {other:?}"),
        }
        assert_eq!(HomSet::new(&z(&[0]), &z(&[0]), 10).unwrap_err(), Error::InfiniteHom);
        assert_eq!(hom_count(&z(&[0]), &z(&[5])).unwrap(), BigInt::from(5));
        assert_eq!(hom_count(&z(&[5]), &z(&[0])).unwrap(), BigInt::from(1));
        let q = FpObject::vect(Ring::Rational, 1).unwrap();
        assert_eq!(HomSet::new(&q, &q, 10).unwrap_err(), Error::InfiniteHom);
        let q0 = FpObject::vect(Ring::Rational, 0).unwrap();
        assert_eq!(HomSet::new(&q0, &q, 10).unwrap().len(), 1);
    }

    #[test]
    fn vector_and_set_homs() {
        let f2 = Ring::prime(2).unwrap();
        let v = FpObject::vect(f2, 2).unwrap();
        assert_eq!(hom_enumerate(&v, &v, 100).unwrap().len(), 16);
        let maps = hom_enumerate(&FpObject::finset(2), &FpObject::finset(3), 100).unwrap();
        assert_eq!(maps.len(), 9);
        assert_eq!(maps[1].map_table().unwrap(), &[0, 1]);
    }
}
