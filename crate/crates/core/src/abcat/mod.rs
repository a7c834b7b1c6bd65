//! The concrete category layer: vector spaces over a field, finitely
//! presented modules over Z or Z/n, and finite sets.

mod finite;
mod hom;
mod module;
mod morphism;
mod ops;

use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value as Json};

pub use finite::{finite_modules, geninv_function, is_projective, radical_and_socle, RadicalSocle};
pub use hom::{hom_count, hom_enumerate, HomSet, DEFAULT_BUDGET};
pub use module::FpModule;
pub use morphism::{compose, Morphism};
pub(crate) use morphism::int_matrix;
pub(crate) use ops::{retraction_of_mono, section_of_epi, solve_congruences};
pub use ops::{
    direct_sum, factor_through_image, find_retraction, find_section, image, is_epi, is_mono, kernel, split,
    DirectSum,
    SubobjectSplit,
};

use crate::error::{Error, Result};
use crate::exact::Ring;
use crate::matops::ExactMatrix;

/// An object of one of the concrete categories.
///
/// Equality is isomorphism type: dimension over the same field, the same
/// normal form over the same base, or the same cardinality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FpObject {
    Vect { ring: Ring, dim: usize },
    Module(FpModule),
    FinSet(usize),
}

impl FpObject {
    pub fn vect(ring: Ring, dim: usize) -> Result<Self> {
        if !ring.is_field() {
            return Err(Error::spec(format!("vector spaces need a field, got {ring}")));
        }
        Ok(FpObject::Vect { ring, dim })
    }

    pub fn module(base: Ring, gens: usize, relations: ExactMatrix) -> Result<Self> {
        Ok(FpObject::Module(FpModule::new(base, gens, relations)?))
    }

    /// `⊕ Z/d_i` over `base`; an order of 0 gives a free summand.
    pub fn cyclic(base: Ring, orders: &[u64]) -> Result<Self> {
        Ok(FpObject::Module(FpModule::cyclic_sum(base, orders)?))
    }

    pub fn finset(size: usize) -> Self {
        FpObject::FinSet(size)
    }

    /// Zero object of the same category.
    pub fn zero_like(&self) -> Self {
        match self {
            FpObject::Vect { ring, .. } => FpObject::Vect { ring: *ring, dim: 0 },
            FpObject::Module(m) => FpObject::Module(FpModule::zero(m.base())),
            FpObject::FinSet(_) => FpObject::FinSet(0),
        }
    }

    pub fn is_additive(&self) -> bool {
        !matches!(self, FpObject::FinSet(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FpObject::Vect { dim, .. } => *dim == 0,
            FpObject::Module(m) => m.is_zero(),
            FpObject::FinSet(n) => *n == 0,
        }
    }

    /// Ring of the category: the field, the module base, or `None` for sets.
    pub fn base(&self) -> Option<Ring> {
        match self {
            FpObject::Vect { ring, .. } => Some(*ring),
            FpObject::Module(m) => Some(m.base()),
            FpObject::FinSet(_) => None,
        }
    }

    /// Number of coordinates morphism matrices use for this object.
    pub fn coords(&self) -> usize {
        match self {
            FpObject::Vect { dim, .. } => *dim,
            FpObject::Module(m) => m.dim(),
            FpObject::FinSet(n) => *n,
        }
    }

    pub fn as_module(&self) -> Option<&FpModule> {
        match self {
            FpObject::Module(m) => Some(m),
            _ => None,
        }
    }

    /// Cardinality when finite.
    pub fn order(&self) -> Option<num_bigint::BigInt> {
        match self {
            FpObject::Vect { ring, dim } => {
                ring.modulus().map(|p| num_bigint::BigInt::from(p).pow(*dim as u32))
                    .or_else(|| (*dim == 0).then(|| 1.into()))
            }
            FpObject::Module(m) => m.order(),
            FpObject::FinSet(n) => Some((*n).into()),
        }
    }

    pub(crate) fn same_category(&self, other: &FpObject) -> bool {
        match (self, other) {
            (FpObject::FinSet(_), FpObject::FinSet(_)) => true,
            (FpObject::Vect { ring: a, .. }, FpObject::Vect { ring: b, .. }) => a == b,
            (FpObject::Module(a), FpObject::Module(b)) => a.base() == b.base(),
            _ => false,
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            FpObject::Vect { ring, dim } => json!({"variant": "vect", "ring": ring.to_string(), "dim": dim}),
            FpObject::Module(m) => json!({
                "variant": "fpmod",
                "base": m.base().to_string(),
                "gens": m.gens(),
                "relations": m.relations().to_json(),
            }),
            FpObject::FinSet(n) => json!({"variant": "finset", "size": n}),
        }
    }

    pub fn from_json(v: &Json) -> Result<Self> {
        let variant = v
            .get("variant")
            .and_then(Json::as_str)
            .ok_or_else(|| Error::spec("object needs a \"variant\" string"))?;
        let count = |key: &str| -> Result<usize> {
            v.get(key)
                .and_then(Json::as_u64)
                .map(|n| n as usize)
                .ok_or_else(|| Error::spec(format!("object needs a non-negative \"{key}\"")))
        };
        let ring = |key: &str| -> Result<Ring> {
            v.get(key)
                .and_then(Json::as_str)
                .ok_or_else(|| Error::spec(format!("object needs a \"{key}\" descriptor")))?
                .parse()
        };
        match variant {
            "vect" => FpObject::vect(ring("ring")?, count("dim")?),
            "finset" => Ok(FpObject::FinSet(count("size")?)),
            "fpmod" => {
                let base = ring("base")?;
                let gens = count("gens")?;
                let relations = match v.get("relations") {
                    Some(r) => {
                        let m = ExactMatrix::from_json(r)?;
                        // an empty relation list may be written without a ring
                        if m.cols() == 0 && m.rows() == gens {
                            ExactMatrix::zeros(base, gens, 0)
                        } else {
                            m
                        }
                    }
                    None => ExactMatrix::zeros(base, gens, 0),
                };
                FpObject::module(base, gens, relations)
            }
            other => Err(Error::spec(format!("unknown object variant `{other}`"))),
        }
    }
}

/// Builds an object from its JSON description.
pub fn make_object(spec: &Json) -> Result<FpObject> {
    FpObject::from_json(spec)
}

impl fmt::Display for FpObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FpObject::Vect { ring, dim } => write!(f, "{ring}^{dim}"),
            FpObject::FinSet(n) => write!(f, "{{0..{n}}}"),
            FpObject::Module(m) => {
                if m.is_zero() {
                    return write!(f, "0");
                }
                let parts: Vec<String> = m
                    .orders()
                    .iter()
                    .map(|o| if o.is_zero() { "Z".to_string() } else { format!("Z/{o}") })
                    .collect();
                write!(f, "{}", parts.join("+"))?;
                if m.base() != Ring::Integer {
                    write!(f, " over {}", m.base())?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn object_examples() {
        let z4 = make_object(&json!({"variant": "fpmod", "base": "Z", "gens": 1,
            "relations": {"ring": "Z", "rows": 1, "cols": 1, "entries": [[4]]}}))
        .unwrap();
        assert_eq!(z4.as_module().unwrap().invariant_factors(), vec![BigInt::from(4)]);
        let z6 = make_object(&json!({"variant": "fpmod", "base": "Z", "gens": 2,
            "relations": {"ring": "Z", "entries": [[2, 0], [0, 3]]}}))
        .unwrap();
        assert_eq!(z6.as_module().unwrap().invariant_factors(), vec![BigInt::from(6)]);
        let v = make_object(&json!({"variant": "vect", "ring": "Fp:2", "dim": 3})).unwrap();
        assert_eq!(v.coords(), 3);
        assert_eq!(v.order(), Some(BigInt::from(8)));
    }

    #[test]
    fn equality_is_isomorphism_type() {
        let a = FpObject::cyclic(Ring::Integer, &[2, 3]).unwrap();
        let b = FpObject::cyclic(Ring::Integer, &[6]).unwrap();
        assert_eq!(a, b);
        let z6 = Ring::modular(6).unwrap();
        assert_ne!(b, FpObject::cyclic(z6, &[6]).unwrap());
    }

    #[test]
    fn bad_objects_are_rejected() {
        assert!(make_object(&json!({"variant": "vect", "ring": "Z", "dim": 1})).is_err());
        assert!(make_object(&json!({"variant": "blob"})).is_err());
        assert!(make_object(&json!({"variant": "fpmod", "base": "Z", "gens": 2,
            "relations": {"ring": "Z", "entries": [[1]]}}))
        .is_err());
    }

    #[test]
    fn json_round_trip() {
        for o in [
            FpObject::cyclic(Ring::modular(12).unwrap(), &[2, 6]).unwrap(),
            FpObject::cyclic(Ring::Integer, &[0, 4]).unwrap(),
            FpObject::vect(Ring::Rational, 2).unwrap(),
            FpObject::finset(5),
        ] {
            let back = FpObject::from_json(&o.to_json()).unwrap();
            assert_eq!(back, o);
            assert_eq!(back.to_json(), o.to_json());
        }
    }
}
