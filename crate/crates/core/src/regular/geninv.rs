use std::fmt;

use serde_json::{json, Value as Json};

use crate::abcat::{compose, factor_through_image, kernel, retraction_of_mono, section_of_epi, Morphism};
use crate::error::Result;

/// Which half of the splitting criterion failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Obstruction {
    KernelNotSummand,
    ImageNotSummand,
}

impl Obstruction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Obstruction::KernelNotSummand => "kernel-not-summand",
            Obstruction::ImageNotSummand => "image-not-summand",
        }
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of [`generalized_inverse`], with the intermediate morphisms of
/// the construction kept for tracing.
#[derive(Clone, Debug)]
pub struct GenInvResult {
    pub h: Option<Morphism>,
    pub obstruction: Option<Obstruction>,
    /// `j`: the image inclusion.
    pub j: Morphism,
    /// `f′`: the corestriction onto the image.
    pub f_prime: Morphism,
    /// Retraction of the image inclusion.
    pub alpha: Option<Morphism>,
    /// Section of the corestriction.
    pub beta: Option<Morphism>,
    /// `β ∘ α`, before reflexivization.
    pub g: Option<Morphism>,
}

impl GenInvResult {
    pub fn exists(&self) -> bool {
        self.h.is_some()
    }

    /// Step-by-step account of the construction as JSON.
    pub fn trace(&self) -> Result<Json> {
        let m = |x: &Option<Morphism>| x.as_ref().map_or(Json::Null, Morphism::to_json);
        let k = kernel(&self.f_prime)?;
        let mut steps = vec![
            json!({"step": "kernel", "object": k.domain().to_string(), "inclusion": k.to_json()}),
            json!({"step": "image", "object": self.j.domain().to_string(),
                   "j": self.j.to_json(), "f_prime": self.f_prime.to_json()}),
            json!({"step": "section of f_prime", "beta": m(&self.beta)}),
        ];
        if self.obstruction != Some(Obstruction::KernelNotSummand) {
            steps.push(json!({"step": "retraction of j", "alpha": m(&self.alpha)}));
        }
        match self.obstruction {
            Some(o) => steps.push(json!({"step": "obstruction", "reason": o.as_str()})),
            None => {
                steps.push(json!({"step": "g = beta . alpha", "g": m(&self.g)}));
                steps.push(json!({"step": "h = g . f . g", "h": m(&self.h)}));
            }
        }
        Ok(json!({
            "result": self.h.is_some(),
            "obstruction": self.obstruction.map(|o| o.as_str()),
            "steps": steps,
        }))
    }
}

/// Generalized inverse of an additive morphism through its image
/// factorization `f = j ∘ f′`: a section `β` of `f′` exists iff the kernel
/// is a summand, a retraction `α` of `j` iff the image is; then
/// `g = β ∘ α` satisfies `f g f = f` and `h = g f g` is returned.
///
/// The kernel is tested first, so a morphism failing both conditions
/// reports `kernel-not-summand`.
pub fn generalized_inverse(f: &Morphism) -> Result<GenInvResult> {
    let (j, f_prime) = factor_through_image(f)?;
    let beta = section_of_epi(&f_prime)?;
    let mut out = GenInvResult {
        h: None,
        obstruction: None,
        j,
        f_prime,
        alpha: None,
        beta,
        g: None,
    };
    if out.beta.is_none() {
        out.obstruction = Some(Obstruction::KernelNotSummand);
        return Ok(out);
    }
    out.alpha = retraction_of_mono(&out.j)?;
    let (Some(alpha), Some(beta)) = (&out.alpha, &out.beta) else {
        out.obstruction = Some(Obstruction::ImageNotSummand);
        return Ok(out);
    };
    let g = compose(beta, alpha)?;
    let fg = compose(f, &g)?;
    let h = compose(&g, &fg)?;
    assert_eq!(&compose(f, &compose(&h, f)?)?, f, "f h f = f");
    assert_eq!(compose(&h, &compose(f, &h)?)?, h, "h f h = h");
    out.g = Some(g);
    out.h = Some(h);
    Ok(out)
}

/// Whether `h` is a generalized inverse of `f`.
pub fn is_generalized_inverse(f: &Morphism, h: &Morphism) -> Result<bool> {
    Ok(compose(f, &compose(h, f)?)? == *f && compose(h, &compose(f, h)?)? == *h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abcat::{finite_modules, hom_enumerate, FpObject, DEFAULT_BUDGET};
    use crate::{ExactMatrix, Ring};

    #[test]
    fn rank_one_matrix_over_f2() {
        let f2 = Ring::prime(2).unwrap();
        let v = FpObject::vect(f2, 2).unwrap();
        let f = Morphism::new(v.clone(), v.clone(), ExactMatrix::from_rows(f2, &[vec![1, 1], vec![0, 0]])).unwrap();
        let r = generalized_inverse(&f).unwrap();
        let expected = ExactMatrix::from_rows(f2, &[vec![1, 0], vec![0, 0]]);
        assert_eq!(r.h.as_ref().unwrap().matrix().unwrap(), expected);
        // brute force: every candidate among the 16 matrices satisfying both identities
        let both: Vec<_> = hom_enumerate(&v, &v, DEFAULT_BUDGET)
            .unwrap()
            .into_iter()
            .filter(|h| is_generalized_inverse(&f, h).unwrap())
            .collect();
        assert!(both.iter().any(|h| h.matrix().unwrap() == expected));
    }

    #[test]
    fn doubling_on_integers_has_no_inverse() {
        let z = FpObject::cyclic(Ring::Integer, &[0]).unwrap();
        let f = Morphism::new(z.clone(), z, ExactMatrix::from_rows(Ring::Integer, &[vec![2]])).unwrap();
        let r = generalized_inverse(&f).unwrap();
        assert!(!r.exists());
        assert_eq!(r.obstruction, Some(Obstruction::ImageNotSummand));
        assert_eq!(r.trace().unwrap()["obstruction"], "image-not-summand");
    }

    #[test]
    fn idempotents() {
        // e is always a generalized inverse of itself; the construction may
        // return another one (the rank-one F_2 example above is idempotent)
        let m = FpObject::cyclic(Ring::Integer, &[2, 6]).unwrap();
        let mut same = 0;
        for e in hom_enumerate(&m, &m, DEFAULT_BUDGET).unwrap() {
            if compose(&e, &e).unwrap() == e {
                assert!(is_generalized_inverse(&e, &e).unwrap());
                let h = generalized_inverse(&e).unwrap().h.unwrap();
                assert!(is_generalized_inverse(&e, &h).unwrap());
                same += (h == e) as usize;
            }
        }
        assert!(same >= 2);
        let id = Morphism::identity(&m);
        assert_eq!(generalized_inverse(&id).unwrap().h.unwrap(), id);
        let zero = Morphism::zero(&m, &m).unwrap();
        assert!(generalized_inverse(&zero).unwrap().h.unwrap().is_zero());
    }

    #[test]
    fn agrees_with_exhaustive_search() {
        let mods = finite_modules(Ring::Integer, 8).unwrap();
        for u in &mods {
            for m in &mods {
                let back = hom_enumerate(m, u, DEFAULT_BUDGET).unwrap();
                for f in hom_enumerate(u, m, DEFAULT_BUDGET).unwrap() {
                    let brute = back.iter().any(|h| is_generalized_inverse(&f, h).unwrap());
                    assert_eq!(generalized_inverse(&f).unwrap().exists(), brute, "{u} -> {m}");
                }
            }
        }
    }
}
