use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bad ring descriptor `{0}`")]
    BadRing(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("operation requires {expected}, got ring {got}")]
    WrongRing { expected: &'static str, got: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("malformed input: {0}")]
    BadSpec(String),
    #[error("objects of different variants or base rings cannot be combined")]
    MixedVariant,
    #[error("operation is only defined for additive objects")]
    NotAdditive,
    #[error("morphism is not a monomorphism")]
    NotMono,
    #[error("morphism is not an epimorphism")]
    NotEpi,
    #[error("morphism is not central in the endomorphism ring")]
    NotCentral,
    #[error("operation requires base ring {expected}")]
    WrongBase { expected: &'static str },
    #[error("object is not finite")]
    NotFinite,
    #[error("hom-set is infinite")]
    InfiniteHom,
    #[error("{what} has {cardinality} elements, exceeding the budget of {budget}")]
    TooLarge {
        what: &'static str,
        cardinality: String,
        budget: u64,
    },
    #[error("function has an empty domain but a nonempty codomain")]
    EmptyDomain,
    #[error("ring axiom violated: {0}")]
    NotARing(String),
    #[error("invalid group table: {0}")]
    NotAGroup(String),
    #[error("invalid graded structure: {0}")]
    BadGrading(String),
}

impl Error {
    pub(crate) fn too_large(what: &'static str, cardinality: impl ToString, budget: u64) -> Self {
        Error::TooLarge {
            what,
            cardinality: cardinality.to_string(),
            budget,
        }
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::ShapeMismatch(msg.into())
    }

    pub(crate) fn spec(msg: impl Into<String>) -> Self {
        Error::BadSpec(msg.into())
    }
}
