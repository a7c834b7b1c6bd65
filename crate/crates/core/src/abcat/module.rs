use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::Ring;
use crate::matops::{self, ExactMatrix};

/// Finitely presented module over Z or Z/n together with its Smith normal
/// form.
///
/// With `P*R*Q = D` for the integer relations `R` (the base modulus columns
/// appended over Z/n), normal coordinates of a user vector `x` are `P*x`.
/// Coordinates whose diagonal entry is 1 are identically zero in the module
/// and are dropped; the rest are cyclic of the recorded order, 0 meaning
/// free.
#[derive(Clone, Debug)]
pub struct FpModule {
    base: Ring,
    gens: usize,
    relations: ExactMatrix,
    p: ExactMatrix,
    p_inv: ExactMatrix,
    diag: Vec<BigInt>,
    kept: Vec<usize>,
    orders: Vec<BigInt>,
}

impl PartialEq for FpModule {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.orders == other.orders
    }
}

impl Eq for FpModule {}

impl FpModule {
    pub fn new(base: Ring, gens: usize, relations: ExactMatrix) -> Result<Self> {
        if !matches!(base, Ring::Integer | Ring::Modular(_)) {
            return Err(Error::spec(format!(
                "module base must be Z or Zn:<n>, got {base}"
            )));
        }
        if relations.ring() != base {
            return Err(Error::spec(format!(
                "relations are over {} but the base is {base}",
                relations.ring()
            )));
        }
        if relations.rows() != gens {
            return Err(Error::spec(format!(
                "relations need {gens} rows, found {}",
                relations.rows()
            )));
        }
        let mut int_rel = relations.cast(Ring::Integer).expect("integer lift");
        if let Some(n) = base.modulus() {
            let nid = ExactMatrix::identity(Ring::Integer, gens).scale(&Ring::Integer.from_i64(n as i64));
            int_rel = ExactMatrix::hstack(Ring::Integer, gens, &[&int_rel, &nid])?;
        }
        let s = matops::snf(&int_rel)?;
        let diag: Vec<BigInt> = (0..gens)
            .map(|i| s.invariant_factors.get(i).cloned().unwrap_or_else(BigInt::zero))
            .collect();
        let kept: Vec<usize> = (0..gens).filter(|&i| !diag[i].is_one()).collect();
        let orders = kept.iter().map(|&i| diag[i].clone()).collect();
        Ok(FpModule {
            base,
            gens,
            relations,
            p: s.p,
            p_inv: s.p_inv,
            diag,
            kept,
            orders,
        })
    }

    /// `⊕ Z/d_i` over the given base, presented diagonally.
    pub fn cyclic_sum(base: Ring, orders: &[u64]) -> Result<Self> {
        let k = orders.len();
        let mut rel = ExactMatrix::zeros(base, k, k);
        for (i, &d) in orders.iter().enumerate() {
            rel.set(i, i, base.from_i64(d as i64));
        }
        Self::new(base, k, rel)
    }

    pub fn zero(base: Ring) -> Self {
        Self::new(base, 0, ExactMatrix::zeros(base, 0, 0)).expect("zero module")
    }

    pub fn base(&self) -> Ring {
        self.base
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &ExactMatrix {
        &self.relations
    }

    /// Orders of the normal-form cyclic summands (torsion first, then 0 for
    /// each free summand).
    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.orders.iter().filter(|o| !o.is_zero()).cloned().collect()
    }

    pub fn free_rank(&self) -> usize {
        self.orders.iter().filter(|o| o.is_zero()).count()
    }

    /// Number of normal-form coordinates.
    pub fn dim(&self) -> usize {
        self.orders.len()
    }

    pub fn is_zero(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.orders.iter().product())
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order()?.to_u64()
    }

    /// Full `P*A_user*P_inv` transport of a user matrix between two modules.
    pub(crate) fn full_normal(codomain: &FpModule, domain: &FpModule, user: &ExactMatrix) -> ExactMatrix {
        let lifted = user.cast(Ring::Integer).expect("integer lift");
        &(&codomain.p * &lifted) * &domain.p_inv
    }

    pub(crate) fn diag(&self) -> &[BigInt] {
        &self.diag
    }

    pub(crate) fn kept(&self) -> &[usize] {
        &self.kept
    }

    /// `P` restricted to the kept rows: user coordinates to normal ones.
    pub(crate) fn to_normal(&self) -> ExactMatrix {
        self.p.select_rows(&self.kept)
    }

    /// Columns of `P^-1` for the kept coordinates: normal to user.
    pub(crate) fn from_normal(&self) -> ExactMatrix {
        self.p_inv.select_cols(&self.kept)
    }

    /// Reduces a normal-coordinate matrix (rows indexed by this module's
    /// coordinates) into canonical residues.
    pub(crate) fn reduce_rows(&self, m: &mut ExactMatrix) {
        debug_assert_eq!(m.rows(), self.dim());
        for (i, o) in self.orders.iter().enumerate() {
            if o.is_zero() {
                continue;
            }
            for j in 0..m.cols() {
                let v = m.get(i, j).to_bigint().unwrap();
                if v.is_negative_or_ge(o) {
                    m.set(i, j, Ring::Integer.from_bigint(&v.mod_floor(o)));
                }
            }
        }
    }

    /// The relation lattice in normal coordinates is the diagonal of the
    /// orders; a free coordinate contributes nothing.
    pub(crate) fn relation_diagonal(&self) -> ExactMatrix {
        let k = self.dim();
        let mut d = ExactMatrix::zeros(Ring::Integer, k, k);
        for (i, o) in self.orders.iter().enumerate() {
            d.set(i, i, Ring::Integer.from_bigint(o));
        }
        d
    }
}

trait RangeCheck {
    fn is_negative_or_ge(&self, bound: &BigInt) -> bool;
}

impl RangeCheck for BigInt {
    fn is_negative_or_ge(&self, bound: &BigInt) -> bool {
        self.sign() == num_bigint::Sign::Minus || self >= bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclic_of_order_four() {
        let m = FpModule::new(Ring::Integer, 1, ExactMatrix::from_rows(Ring::Integer, &[vec![4]])).unwrap();
        assert_eq!(m.invariant_factors(), ints(&[4]));
        assert_eq!(m.order_u64(), Some(4));
    }

    #[test]
    fn chinese_remainder_merge() {
        let rel = ExactMatrix::from_rows(Ring::Integer, &[vec![2, 0], vec![0, 3]]);
        let m = FpModule::new(Ring::Integer, 2, rel).unwrap();
        assert_eq!(m.invariant_factors(), ints(&[6]));
        assert_eq!(m.dim(), 1);
    }

    #[test]
    fn free_and_torsion_parts() {
        let rel = ExactMatrix::from_rows(Ring::Integer, &[vec![2], vec![0], vec![0]]);
        let m = FpModule::new(Ring::Integer, 3, rel).unwrap();
        assert_eq!(m.invariant_factors(), ints(&[2]));
        assert_eq!(m.free_rank(), 2);
        assert!(!m.is_finite());
    }

    #[test]
    fn modular_base_appends_modulus() {
        let z4 = Ring::modular(4).unwrap();
        let m = FpModule::new(z4, 2, ExactMatrix::from_rows(z4, &[vec![2], vec![0]])).unwrap();
        assert_eq!(m.invariant_factors(), ints(&[2, 4]));
        assert!(m.is_finite());
    }

    #[test]
    fn presentation_mismatch_is_rejected() {
        let z4 = Ring::modular(4).unwrap();
        assert!(FpModule::new(Ring::Integer, 1, ExactMatrix::zeros(z4, 1, 1)).is_err());
        assert!(FpModule::new(Ring::Integer, 2, ExactMatrix::zeros(Ring::Integer, 1, 1)).is_err());
        assert!(FpModule::new(Ring::Rational, 0, ExactMatrix::zeros(Ring::Rational, 0, 0)).is_err());
    }

    #[test]
    fn normal_coordinates_round_trip() {
        let rel = ExactMatrix::from_rows(Ring::Integer, &[vec![2, 4], vec![6, 8]]);
        let m = FpModule::new(Ring::Integer, 2, rel).unwrap();
        let back = &m.to_normal() * &m.from_normal();
        assert_eq!(back, ExactMatrix::identity(Ring::Integer, m.dim()));
    }
}
