//! Exact scalar arithmetic over Z, Q, Z/n and F_p.
//!
//! Residues are kept in `[0, n)` and fractions in lowest terms with a
//! positive denominator, so equality of scalars is structural equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value as Json;

use crate::error::{Error, Result};

/// Base ring descriptor.
///
/// `Prime(p)` and `Modular(p)` share arithmetic but are different rings:
/// only the former counts as a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Integer,
    Rational,
    Modular(u64),
    Prime(u64),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization `[(p, k)]` with increasing primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl Ring {
    pub fn modular(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::BadModulus(n));
        }
        Ok(Ring::Modular(n))
    }

    pub fn prime(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Ring::Prime(p))
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Ring::Rational | Ring::Prime(_))
    }

    /// Characteristic modulus for the finite rings, `None` for Z and Q.
    pub fn modulus(&self) -> Option<u64> {
        match *self {
            Ring::Modular(n) | Ring::Prime(n) => Some(n),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    /// Image of an integer under the canonical map Z -> ring.
    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        let value = match *self {
            Ring::Integer => Value::Int(v.clone()),
            Ring::Rational => Value::Frac(BigRational::from_integer(v.clone())),
            Ring::Modular(n) | Ring::Prime(n) => {
                let r = v.mod_floor(&BigInt::from(n));
                Value::Residue(r.to_u64().expect("residue below modulus"))
            }
        };
        Scalar { ring: *self, value }
    }

    /// Rational number `num/den`; only meaningful over Q.
    pub fn fraction(&self, num: i64, den: i64) -> Result<Scalar> {
        if *self != Ring::Rational {
            return Err(Error::WrongRing {
                expected: "Q",
                got: self.to_string(),
            });
        }
        if den == 0 {
            return Err(Error::spec("zero denominator"));
        }
        Ok(Scalar {
            ring: *self,
            value: Value::Frac(BigRational::new(num.into(), den.into())),
        })
    }

    /// All elements in the fixed order `0, 1, ..., n-1`; `None` for the
    /// infinite rings.
    pub fn enumerate(&self) -> Option<Vec<Scalar>> {
        let n = self.modulus()?;
        Some(
            (0..n)
                .map(|r| Scalar {
                    ring: *self,
                    value: Value::Residue(r),
                })
                .collect(),
        )
    }

    /// Parses a JSON scalar (number, or string such as `"-3"` / `"2/5"`).
    pub fn parse_json(&self, v: &Json) -> Result<Scalar> {
        match v {
            Json::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(self.from_i64(i))
                } else if let Some(u) = n.as_u64() {
                    Ok(self.from_bigint(&BigInt::from(u)))
                } else {
                    Err(Error::spec(format!("non-integer number {n}")))
                }
            }
            Json::String(s) => self.parse_str(s),
            other => Err(Error::spec(format!("expected scalar, found {other}"))),
        }
    }

    pub fn parse_str(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::spec(format!("cannot parse `{s}` as an element of {self}"));
        if let Some((num, den)) = s.split_once('/') {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            match *self {
                Ring::Rational => Ok(Scalar {
                    ring: *self,
                    value: Value::Frac(BigRational::new(num, den)),
                }),
                Ring::Integer => {
                    if (&num % &den).is_zero() {
                        Ok(self.from_bigint(&(num / den)))
                    } else {
                        Err(bad())
                    }
                }
                _ => {
                    let d = self.from_bigint(&den).invert().ok_or_else(bad)?;
                    Ok(&self.from_bigint(&num) * &d)
                }
            }
        } else {
            let v: BigInt = s.parse().map_err(|_| bad())?;
            Ok(self.from_bigint(&v))
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integer => write!(f, "Z"),
            Ring::Rational => write!(f, "Q"),
            Ring::Modular(n) => write!(f, "Zn:{n}"),
            Ring::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        let bad = || Error::BadRing(s.to_string());
        match s.trim() {
            "Z" => Ok(Ring::Integer),
            "Q" => Ok(Ring::Rational),
            t => {
                if let Some(n) = t.strip_prefix("Zn:") {
                    Ring::modular(n.parse().map_err(|_| bad())?)
                } else if let Some(p) = t.strip_prefix("Fp:") {
                    Ring::prime(p.parse().map_err(|_| bad())?)
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl serde::Serialize for Ring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Ring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Int(BigInt),
    Frac(BigRational),
    Residue(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    ring: Ring,
    value: Value,
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(n as i128) as u64)
}

impl Scalar {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(v) => v.is_zero(),
            Value::Frac(v) => v.is_zero(),
            Value::Residue(v) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    /// Multiplicative inverse, or `None` when `self` is not a unit.
    /// Over Z/n this is the extended-gcd inverse.
    pub fn invert(&self) -> Option<Scalar> {
        let value = match &self.value {
            Value::Int(v) => {
                if v.is_one() || (-v).is_one() {
                    Value::Int(v.clone())
                } else {
                    return None;
                }
            }
            Value::Frac(v) => {
                if v.is_zero() {
                    return None;
                }
                Value::Frac(v.recip())
            }
            Value::Residue(v) => Value::Residue(mod_inverse(*v, self.ring.modulus()?)?),
        };
        Some(Scalar {
            ring: self.ring,
            value,
        })
    }

    /// Integer representative: the value itself over Z, the canonical
    /// residue over Z/n and F_p, the numerator of an integral rational.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match &self.value {
            Value::Int(v) => Some(v.clone()),
            Value::Residue(v) => Some(BigInt::from(*v)),
            Value::Frac(v) => v.is_integer().then(|| v.numer().clone()),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.value {
            Value::Int(v) => v.to_i64(),
            Value::Residue(v) => i64::try_from(*v).ok(),
            Value::Frac(v) => v.is_integer().then(|| v.numer().to_i64()).flatten(),
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self.value {
            Value::Residue(v) => Some(v),
            _ => None,
        }
    }

    /// Same element read in another ring through the integer representative.
    pub fn cast(&self, ring: Ring) -> Option<Scalar> {
        if ring == self.ring {
            return Some(self.clone());
        }
        match (&self.value, ring) {
            (Value::Frac(v), Ring::Rational) => Some(Scalar {
                ring,
                value: Value::Frac(v.clone()),
            }),
            _ => Some(ring.from_bigint(&self.to_bigint()?)),
        }
    }

    pub fn to_json(&self) -> Json {
        match &self.value {
            Value::Residue(v) => Json::from(*v),
            Value::Int(v) => match v.to_i64() {
                Some(i) => Json::from(i),
                None => Json::String(v.to_string()),
            },
            Value::Frac(v) => {
                if v.is_integer() {
                    match v.numer().to_i64() {
                        Some(i) => Json::from(i),
                        None => Json::String(v.numer().to_string()),
                    }
                } else {
                    Json::String(format!("{}/{}", v.numer(), v.denom()))
                }
            }
        }
    }

    fn binary(&self, other: &Scalar, int: impl Fn(&BigInt, &BigInt) -> BigInt, frac: impl Fn(&BigRational, &BigRational) -> BigRational, res: impl Fn(u128, u128, u128) -> u128) -> Scalar {
        assert_eq!(self.ring, other.ring, "scalars from different rings");
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(int(a, b)),
            (Value::Frac(a), Value::Frac(b)) => Value::Frac(frac(a, b)),
            (Value::Residue(a), Value::Residue(b)) => {
                let n = self.ring.modulus().expect("residue ring") as u128;
                Value::Residue(res(*a as u128, *b as u128, n) as u64)
            }
            _ => unreachable!("value kind always matches the ring"),
        };
        Scalar {
            ring: self.ring,
            value,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Int(v) => write!(f, "{v}"),
            Value::Frac(v) => write!(f, "{v}"),
            Value::Residue(v) => write!(f, "{v}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a + b, |a, b| a + b, |a, b, n| (a + b) % n)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a - b, |a, b| a - b, |a, b, n| (a + n - b) % n)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a * b, |a, b| a * b, |a, b, n| (a * b) % n)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let value = match &self.value {
            Value::Int(v) => Value::Int(-v),
            Value::Frac(v) => Value::Frac(-v),
            Value::Residue(v) => {
                let n = self.ring.modulus().expect("residue ring");
                Value::Residue((n - v) % n)
            }
        };
        Scalar {
            ring: self.ring,
            value,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
