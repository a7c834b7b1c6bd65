use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde_json::{json, Value as Json};

use super::{FpModule, FpObject};
use crate::error::{Error, Result};
use crate::exact::Ring;
use crate::matops::ExactMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Arrow {
    Matrix(ExactMatrix),
    Map(Vec<usize>),
}

/// A morphism of one of the concrete categories.
///
/// Module morphisms are stored on the normal-form coordinates of both ends,
/// each entry reduced into `[0, order)` of its codomain coordinate, so
/// equality of morphisms is equality of the stored data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    domain: Arc<FpObject>,
    codomain: Arc<FpObject>,
    arrow: Arrow,
}

fn int(v: &BigInt) -> crate::exact::Scalar {
    Ring::Integer.from_bigint(v)
}

impl Morphism {
    /// Morphism given by its matrix on the user generators (codomain rows,
    /// domain columns); rejected unless it respects the relations.
    pub fn new(domain: FpObject, codomain: FpObject, matrix: ExactMatrix) -> Result<Self> {
        Self::from_user(Arc::new(domain), Arc::new(codomain), matrix)
    }

    pub(crate) fn from_user(domain: Arc<FpObject>, codomain: Arc<FpObject>, matrix: ExactMatrix) -> Result<Self> {
        if !domain.same_category(&codomain) || !domain.is_additive() {
            return Err(Error::MixedVariant);
        }
        match (&*domain, &*codomain) {
            (FpObject::Vect { ring, dim: m }, FpObject::Vect { dim: n, .. }) => {
                if matrix.ring() != *ring {
                    return Err(Error::WrongRing {
                        expected: "the field of the vector spaces",
                        got: matrix.ring().to_string(),
                    });
                }
                if matrix.shape() != (*n, *m) {
                    return Err(Error::shape(format!(
                        "{}x{} matrix for a map from dimension {m} to {n}",
                        matrix.rows(),
                        matrix.cols()
                    )));
                }
                Ok(Morphism {
                    domain,
                    codomain,
                    arrow: Arrow::Matrix(matrix),
                })
            }
            (FpObject::Module(u), FpObject::Module(m)) => {
                if matrix.ring() != u.base() {
                    return Err(Error::WrongRing {
                        expected: "the module base ring",
                        got: matrix.ring().to_string(),
                    });
                }
                if matrix.shape() != (m.gens(), u.gens()) {
                    return Err(Error::shape(format!(
                        "{}x{} matrix between modules on {} and {} generators",
                        matrix.rows(),
                        matrix.cols(),
                        u.gens(),
                        m.gens()
                    )));
                }
                let full = FpModule::full_normal(m, u, &matrix);
                for (j, dj) in u.diag().iter().enumerate() {
                    for (i, ei) in m.diag().iter().enumerate() {
                        let v = dj * full.get(i, j).to_bigint().unwrap();
                        let ok = if ei.is_zero() { v.is_zero() } else { v.is_multiple_of(ei) };
                        if !ok {
                            return Err(Error::spec(
                                "matrix does not respect the relations of the domain",
                            ));
                        }
                    }
                }
                let normal = full.select(m.kept(), u.kept());
                Ok(Self::from_normal(domain, codomain, normal))
            }
            _ => unreachable!("additive variants checked above"),
        }
    }

    /// Wraps normal-coordinate data, reducing it canonically.
    pub(crate) fn from_normal(domain: Arc<FpObject>, codomain: Arc<FpObject>, mut normal: ExactMatrix) -> Self {
        debug_assert_eq!(normal.shape(), (codomain.coords(), domain.coords()));
        if let FpObject::Module(m) = &*codomain {
            m.reduce_rows(&mut normal);
        }
        Morphism {
            domain,
            codomain,
            arrow: Arrow::Matrix(normal),
        }
    }

    /// A function between finite sets, `map[i]` being the image of `i`.
    pub fn map(domain: usize, codomain: usize, map: Vec<usize>) -> Result<Self> {
        if map.len() != domain || map.iter().any(|&m| m >= codomain) {
            return Err(Error::spec(format!(
                "map table must list {domain} values below {codomain}"
            )));
        }
        Ok(Morphism {
            domain: Arc::new(FpObject::FinSet(domain)),
            codomain: Arc::new(FpObject::FinSet(codomain)),
            arrow: Arrow::Map(map),
        })
    }

    pub fn identity(object: &FpObject) -> Self {
        let obj = Arc::new(object.clone());
        Self::identity_arc(&obj)
    }

    pub(crate) fn identity_arc(obj: &Arc<FpObject>) -> Self {
        let arrow = match &**obj {
            FpObject::FinSet(n) => Arrow::Map((0..*n).collect()),
            FpObject::Vect { ring, dim } => Arrow::Matrix(ExactMatrix::identity(*ring, *dim)),
            FpObject::Module(m) => {
                let mut id = ExactMatrix::identity(Ring::Integer, m.dim());
                m.reduce_rows(&mut id);
                Arrow::Matrix(id)
            }
        };
        Morphism {
            domain: obj.clone(),
            codomain: obj.clone(),
            arrow,
        }
    }

    pub fn zero(domain: &FpObject, codomain: &FpObject) -> Result<Self> {
        Self::zero_arc(Arc::new(domain.clone()), Arc::new(codomain.clone()))
    }

    pub(crate) fn zero_arc(domain: Arc<FpObject>, codomain: Arc<FpObject>) -> Result<Self> {
        if !domain.same_category(&codomain) {
            return Err(Error::MixedVariant);
        }
        let ring = match &*domain {
            FpObject::Vect { ring, .. } => *ring,
            FpObject::Module(_) => Ring::Integer,
            FpObject::FinSet(_) => return Err(Error::NotAdditive),
        };
        let z = ExactMatrix::zeros(ring, codomain.coords(), domain.coords());
        Ok(Morphism {
            domain,
            codomain,
            arrow: Arrow::Matrix(z),
        })
    }

    pub fn domain(&self) -> &FpObject {
        &self.domain
    }

    pub fn codomain(&self) -> &FpObject {
        &self.codomain
    }

    pub(crate) fn domain_arc(&self) -> &Arc<FpObject> {
        &self.domain
    }

    pub(crate) fn codomain_arc(&self) -> &Arc<FpObject> {
        &self.codomain
    }

    pub fn is_additive(&self) -> bool {
        matches!(self.arrow, Arrow::Matrix(_))
    }

    /// Canonical matrix on normal coordinates (the matrix itself for vector
    /// spaces); `None` for set maps.
    pub fn normal(&self) -> Option<&ExactMatrix> {
        match &self.arrow {
            Arrow::Matrix(m) => Some(m),
            Arrow::Map(_) => None,
        }
    }

    pub(crate) fn normal_matrix(&self) -> Result<&ExactMatrix> {
        self.normal().ok_or(Error::NotAdditive)
    }

    pub fn map_table(&self) -> Option<&[usize]> {
        match &self.arrow {
            Arrow::Map(m) => Some(m),
            Arrow::Matrix(_) => None,
        }
    }

    /// Matrix on the user generators of the stored presentations.
    pub fn matrix(&self) -> Option<ExactMatrix> {
        let n = self.normal()?;
        match (&*self.domain, &*self.codomain) {
            (FpObject::Module(u), FpObject::Module(m)) => {
                let user = &(&m.from_normal() * n) * &u.to_normal();
                Some(user.cast(m.base()).expect("integer matrix"))
            }
            _ => Some(n.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.arrow {
            Arrow::Matrix(m) => m.is_zero(),
            Arrow::Map(_) => false,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && *self == Self::identity_arc(&self.domain)
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &Morphism) -> Result<Morphism> {
        compose(self, f)
    }

    pub fn checked_add(&self, other: &Morphism) -> Result<Morphism> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::shape("sum of morphisms with different ends"));
        }
        let sum = self.normal_matrix()?.checked_add(other.normal_matrix()?)?;
        Ok(Self::from_normal(self.domain.clone(), self.codomain.clone(), sum))
    }

    pub fn neg(&self) -> Result<Morphism> {
        let n = self.normal_matrix()?.neg();
        Ok(Self::from_normal(self.domain.clone(), self.codomain.clone(), n))
    }

    pub fn to_json(&self) -> Json {
        let mut v = json!({
            "domain": self.domain.to_json(),
            "codomain": self.codomain.to_json(),
        });
        match &self.arrow {
            Arrow::Map(m) => v["map"] = json!(m),
            Arrow::Matrix(_) => v["matrix"] = self.matrix().unwrap().to_json(),
        }
        v
    }

    pub fn from_json(v: &Json) -> Result<Self> {
        let part = |key: &str| {
            v.get(key)
                .ok_or_else(|| Error::spec(format!("morphism needs a \"{key}\" object")))
        };
        let domain = FpObject::from_json(part("domain")?)?;
        let codomain = FpObject::from_json(part("codomain")?)?;
        if let Some(map) = v.get("map") {
            let (FpObject::FinSet(a), FpObject::FinSet(b)) = (&domain, &codomain) else {
                return Err(Error::spec("\"map\" is only valid between finite sets"));
            };
            let table = map
                .as_array()
                .ok_or_else(|| Error::spec("\"map\" must be an array"))?
                .iter()
                .map(|x| x.as_u64().map(|x| x as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::spec("\"map\" entries must be indices"))?;
            return Morphism::map(*a, *b, table);
        }
        let raw = part("matrix")?;
        let mut matrix = ExactMatrix::from_json(raw)?;
        if matrix.rows() * matrix.cols() == 0 {
            // empty matrices may carry any ring tag
            let ring = domain.base().ok_or(Error::NotAdditive)?;
            matrix = ExactMatrix::zeros(ring, matrix.rows(), matrix.cols());
        }
        Morphism::new(domain, codomain, matrix)
    }
}

/// `g ∘ f`.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    if f.codomain != g.domain {
        return Err(Error::shape(format!(
            "cannot compose a morphism into {} with one out of {}",
            f.codomain, g.domain
        )));
    }
    match (&g.arrow, &f.arrow) {
        (Arrow::Map(gm), Arrow::Map(fm)) => Ok(Morphism {
            domain: f.domain.clone(),
            codomain: g.codomain.clone(),
            arrow: Arrow::Map(fm.iter().map(|&x| gm[x]).collect()),
        }),
        (Arrow::Matrix(gm), Arrow::Matrix(fm)) => Ok(Morphism::from_normal(
            f.domain.clone(),
            g.codomain.clone(),
            gm * fm,
        )),
        _ => Err(Error::MixedVariant),
    }
}

pub(crate) fn normal_entry(m: &ExactMatrix, i: usize, j: usize) -> BigInt {
    m.get(i, j).to_bigint().expect("integral entry")
}

pub(crate) fn int_matrix(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigInt) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(Ring::Integer, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let v = f(i, j);
            if !v.is_zero() {
                m.set(i, j, int(&v));
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: u64, orders: &[u64]) -> FpObject {
        FpObject::cyclic(Ring::modular(n).unwrap(), orders).unwrap()
    }

    #[test]
    fn composition_over_z4() {
        let m = zn(4, &[4]);
        let r = Ring::modular(4).unwrap();
        let two = Morphism::new(m.clone(), m.clone(), ExactMatrix::from_rows(r, &[vec![2]])).unwrap();
        assert!(compose(&two, &two).unwrap().is_zero());
        let id = Morphism::identity(&m);
        assert_eq!(compose(&id, &two).unwrap(), two);
        let zero = Morphism::zero(&m, &m).unwrap();
        assert!(compose(&two, &zero).unwrap().is_zero());
    }

    #[test]
    fn ill_defined_maps_are_rejected() {
        let z2 = FpObject::cyclic(Ring::Integer, &[2]).unwrap();
        let z4 = FpObject::cyclic(Ring::Integer, &[4]).unwrap();
        // 1 -> 1 from Z/2 to Z/4 sends 2 to 2 != 0
        assert!(Morphism::new(z2.clone(), z4.clone(), ExactMatrix::from_rows(Ring::Integer, &[vec![1]])).is_err());
        assert!(Morphism::new(z2, z4, ExactMatrix::from_rows(Ring::Integer, &[vec![2]])).is_ok());
    }

    #[test]
    fn trivial_generators_must_map_to_zero() {
        // Z/2 ⊕ Z/3 presented on two generators is Z/6 on one coordinate
        let z6 = FpObject::cyclic(Ring::Integer, &[2, 3]).unwrap();
        let z3 = FpObject::cyclic(Ring::Integer, &[3]).unwrap();
        let proj = ExactMatrix::from_rows(Ring::Integer, &[vec![0, 1]]);
        assert!(Morphism::new(z6.clone(), z3.clone(), proj).is_ok());
        let bad = ExactMatrix::from_rows(Ring::Integer, &[vec![1, 0]]);
        assert!(Morphism::new(z6, z3, bad).is_err());
    }

    #[test]
    fn equal_after_reduction() {
        let z4 = FpObject::cyclic(Ring::Integer, &[4]).unwrap();
        let a = Morphism::new(z4.clone(), z4.clone(), ExactMatrix::from_rows(Ring::Integer, &[vec![1]])).unwrap();
        let b = Morphism::new(z4.clone(), z4.clone(), ExactMatrix::from_rows(Ring::Integer, &[vec![-3]])).unwrap();
        assert_eq!(a, b);
        assert!(a.is_identity());
    }

    #[test]
    fn morphism_json_round_trip() {
        let u = FpObject::cyclic(Ring::Integer, &[2, 3]).unwrap();
        let m = FpObject::cyclic(Ring::Integer, &[3]).unwrap();
        let f = Morphism::new(u, m, ExactMatrix::from_rows(Ring::Integer, &[vec![0, 2]])).unwrap();
        let back = Morphism::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        let s = Morphism::map(2, 3, vec![2, 0]).unwrap();
        assert_eq!(Morphism::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn set_maps_compose() {
        let f = Morphism::map(3, 2, vec![1, 0, 1]).unwrap();
        let g = Morphism::map(2, 2, vec![1, 1]).unwrap();
        assert_eq!(compose(&g, &f).unwrap().map_table().unwrap(), &[1, 1, 1]);
        assert!(compose(&f, &g).is_err());
    }
}
