use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use super::geninv::{generalized_inverse, Obstruction};
use crate::abcat::{compose, geninv_function, is_epi, is_mono, FpObject, HomSet, Morphism, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::exact::Ring;
use crate::matops::ExactMatrix;

/// Verdict on whether `M` is `U`-regular, with the first failing morphism.
#[derive(Clone, Debug)]
pub struct PairReport {
    pub regular: bool,
    /// Morphisms examined.
    pub checked: u64,
    /// `|Hom(U, M)|`, when enumerated.
    pub total: Option<u64>,
    /// False for the field shortcut and for sampling.
    pub exhaustive: bool,
    pub counterexample: Option<Morphism>,
    pub obstruction: Option<Obstruction>,
}

impl PairReport {
    pub fn to_json(&self) -> Json {
        let mut v = json!({
            "result": self.regular,
            "checked": self.checked,
            "exhaustive": self.exhaustive,
        });
        if let Some(t) = self.total {
            v["hom_count"] = json!(t);
        }
        if let Some(o) = self.obstruction {
            v["obstruction"] = json!(o.as_str());
        }
        if let Some(f) = &self.counterexample {
            v["counterexample"] = f.to_json();
        }
        v
    }
}

/// Generalized inverse of any morphism, additive or a set map.
pub(crate) fn some_inverse(f: &Morphism) -> Result<(Option<Morphism>, Option<Obstruction>)> {
    if f.is_additive() {
        let r = generalized_inverse(f)?;
        Ok((r.h, r.obstruction))
    } else {
        Ok((Some(geninv_function(f)?), None))
    }
}

/// Whether every morphism `U → M` has a generalized inverse.
pub fn is_regular_pair(u: &FpObject, m: &FpObject) -> Result<bool> {
    Ok(regular_pair_report(u, m, DEFAULT_BUDGET)?.regular)
}

/// Exhaustive decision over `Hom(U, M)` in enumeration order, stopping at the
/// first morphism without a generalized inverse. Vector spaces over a field
/// are answered without enumeration.
pub fn regular_pair_report(u: &FpObject, m: &FpObject, budget: u64) -> Result<PairReport> {
    if let (FpObject::Vect { ring: a, .. }, FpObject::Vect { ring: b, .. }) = (u, m) {
        if a == b {
            return Ok(PairReport {
                regular: true,
                checked: 0,
                total: None,
                exhaustive: false,
                counterexample: None,
                obstruction: None,
            });
        }
    }
    let homs = HomSet::new(u, m, budget)?;
    let mut checked = 0;
    for f in homs.iter() {
        checked += 1;
        let (h, obstruction) = some_inverse(&f)?;
        if h.is_none() {
            return Ok(PairReport {
                regular: false,
                checked,
                total: Some(homs.len()),
                exhaustive: true,
                counterexample: Some(f),
                obstruction,
            });
        }
    }
    Ok(PairReport {
        regular: true,
        checked,
        total: Some(homs.len()),
        exhaustive: true,
        counterexample: None,
        obstruction: None,
    })
}

/// Non-exhaustive check on `samples` seeded random morphisms; a `true`
/// verdict only means no counterexample was drawn.
pub fn sample_regular_pair(u: &FpObject, m: &FpObject, samples: u64, seed: u64) -> Result<PairReport> {
    let homs = HomSet::new(u, m, u64::MAX)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for _ in 0..samples {
        let f = homs.get(rng.gen_range(0..homs.len()));
        checked += 1;
        let (h, obstruction) = some_inverse(&f)?;
        if h.is_none() {
            return Ok(PairReport {
                regular: false,
                checked,
                total: Some(homs.len()),
                exhaustive: false,
                counterexample: Some(f),
                obstruction,
            });
        }
    }
    Ok(PairReport {
        regular: true,
        checked,
        total: Some(homs.len()),
        exhaustive: false,
        counterexample: None,
        obstruction: None,
    })
}

/// Memoized pair verdicts for batteries of related decisions; safe to
/// share between threads.
#[derive(Debug, Default)]
pub struct PairCache {
    budget: u64,
    verdicts: Mutex<HashMap<(String, String), bool>>,
}

impl PairCache {
    pub fn new(budget: u64) -> Self {
        PairCache {
            budget,
            verdicts: Mutex::default(),
        }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// [`is_regular_pair`] under this cache's budget, computed once per
    /// pair of presentations.
    pub fn is_regular_pair(&self, u: &FpObject, m: &FpObject) -> Result<bool> {
        let key = (u.to_json().to_string(), m.to_json().to_string());
        if let Some(&v) = self.verdicts.lock().expect("cache lock").get(&key) {
            return Ok(v);
        }
        let v = regular_pair_report(u, m, self.budget)?.regular;
        self.verdicts.lock().expect("cache lock").insert(key, v);
        Ok(v)
    }
}

/// Verdict on whether `M` is regular relative to its base ring.
#[derive(Clone, Debug)]
pub struct ObjectReport {
    pub regular: bool,
    /// A morphism from the base ring without a generalized inverse.
    pub witness: Option<Morphism>,
    pub obstruction: Option<Obstruction>,
}

impl ObjectReport {
    pub fn to_json(&self) -> Json {
        let mut v = json!({"result": self.regular});
        if let Some(o) = self.obstruction {
            v["obstruction"] = json!(o.as_str());
        }
        if let Some(f) = &self.witness {
            v["witness"] = f.to_json();
        }
        v
    }
}

pub fn is_regular_object(m: &FpObject) -> Result<bool> {
    Ok(regular_object_report(m, DEFAULT_BUDGET)?.regular)
}

/// `M` is regular iff it is `R`-regular for the base ring `R`.
///
/// Over Z no nonzero module qualifies: a torsion generator of order `d`
/// gives `Z → M` with kernel `dZ`, which is not a summand of `Z`; a free
/// generator `e` gives `1 ↦ 2e` with image `2Z·e`, not a summand of `M`.
/// The witness is still run through [`generalized_inverse`]. Over Z/n the
/// pair `(Z/n, M)` is decided exhaustively; vector spaces are regular.
pub fn regular_object_report(m: &FpObject, budget: u64) -> Result<ObjectReport> {
    let yes = ObjectReport {
        regular: true,
        witness: None,
        obstruction: None,
    };
    match m {
        FpObject::FinSet(_) => Err(Error::NotAdditive),
        FpObject::Vect { .. } => Ok(yes),
        FpObject::Module(module) => match module.base() {
            Ring::Integer => {
                if module.is_zero() {
                    return Ok(yes);
                }
                let n = module.dim();
                // torsion coordinates come first in normal form
                let torsion = !module.orders()[0].is_zero();
                let mut col = ExactMatrix::zeros(Ring::Integer, n, 1);
                col.set(0, 0, Ring::Integer.from_i64(if torsion { 1 } else { 2 }));
                let z = Arc::new(FpObject::cyclic(Ring::Integer, &[0])?);
                let f = Morphism::from_normal(z, Arc::new(m.clone()), col);
                let r = generalized_inverse(&f)?;
                assert!(r.h.is_none(), "a nonzero Z-module is never Z-regular");
                Ok(ObjectReport {
                    regular: false,
                    witness: Some(f),
                    obstruction: r.obstruction,
                })
            }
            base @ Ring::Modular(n) => {
                let r = FpObject::cyclic(base, &[n])?;
                let p = regular_pair_report(&r, m, budget)?;
                Ok(ObjectReport {
                    regular: p.regular,
                    witness: p.counterexample,
                    obstruction: p.obstruction,
                })
            }
            _ => Err(Error::WrongBase { expected: "Z or Zn:<n>" }),
        },
    }
}

/// One clause of the transfer proposition for `U`-regularity.
#[derive(Clone, Debug)]
pub enum TransferClause {
    /// `π: U → U″` epi: `M` `U`-regular ⟹ `M` `U″`-regular.
    Epi { pi: Morphism, m: FpObject },
    /// `i: M′ → M` mono: `M` `U`-regular ⟹ `M′` `U`-regular.
    Mono { i: Morphism, u: FpObject },
    /// `i: U′ → U`, `p: U → U′`, `p ∘ i = 1`: `M` `U`-regular ⟹ `M` `U′`-regular.
    Summand { i: Morphism, p: Morphism, m: FpObject },
}

impl TransferClause {
    pub fn kind(&self) -> &'static str {
        match self {
            TransferClause::Epi { .. } => "epi",
            TransferClause::Mono { .. } => "mono",
            TransferClause::Summand { .. } => "summand",
        }
    }
}

/// Outcome of [`transfer_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub premise: bool,
    pub conclusion: bool,
    /// The inverses built as in the proof (`π∘g`, `g∘i`, `π∘g`) all worked.
    pub witnessed: bool,
}

impl TransferReport {
    pub fn holds(&self) -> bool {
        !self.premise || (self.conclusion && self.witnessed)
    }
}

/// Whether the chosen clause holds on the given data.
pub fn regularity_transfer_check(clause: &TransferClause) -> Result<bool> {
    Ok(transfer_report(clause, DEFAULT_BUDGET)?.holds())
}

/// Decides premise and conclusion independently and, when the premise
/// holds, also checks the generalized inverses the proof constructs.
pub fn transfer_report(clause: &TransferClause, budget: u64) -> Result<TransferReport> {
    transfer_report_cached(clause, &PairCache::new(budget))
}

/// [`transfer_report`] deciding pairs through `cache`.
pub fn transfer_report_cached(clause: &TransferClause, cache: &PairCache) -> Result<TransferReport> {
    let budget = cache.budget();
    let pair = |u: &FpObject, m: &FpObject| cache.is_regular_pair(u, m);
    // (U, M) of the premise and (U, M) of the conclusion
    let (premise_u, premise_m, target_u, target_m) = match clause {
        TransferClause::Epi { pi, m } => {
            if !is_epi(pi)? {
                return Err(Error::NotEpi);
            }
            (pi.domain(), m, pi.codomain(), m)
        }
        TransferClause::Mono { i, u } => {
            if !is_mono(i)? {
                return Err(Error::NotMono);
            }
            (u, i.codomain(), u, i.domain())
        }
        TransferClause::Summand { i, p, m } => {
            if !compose(p, i)?.is_identity() {
                return Err(Error::spec("summand clause needs p ∘ i = 1"));
            }
            (i.codomain(), m, i.domain(), m)
        }
    };
    // f ↦ the premise-side morphism, and its inverse g ↦ the proof's inverse of f
    let lift = |f: &Morphism| match clause {
        TransferClause::Epi { pi, .. } => compose(f, pi),
        TransferClause::Mono { i, .. } => compose(i, f),
        TransferClause::Summand { p, .. } => compose(f, p),
    };
    let descend = |g: &Morphism| match clause {
        TransferClause::Epi { pi, .. } => compose(pi, g),
        TransferClause::Mono { i, .. } => compose(g, i),
        TransferClause::Summand { p, .. } => compose(p, g),
    };
    let premise = pair(premise_u, premise_m)?;
    let conclusion = pair(target_u, target_m)?;
    let mut witnessed = true;
    if premise {
        for f in HomSet::new(target_u, target_m, budget)?.iter() {
            let (Some(g), _) = some_inverse(&lift(&f)?)? else {
                witnessed = false;
                break;
            };
            let candidate = descend(&g)?;
            if compose(&f, &compose(&candidate, &f)?)? != f {
                witnessed = false;
                break;
            }
        }
    }
    Ok(TransferReport {
        premise,
        conclusion,
        witnessed,
    })
}
