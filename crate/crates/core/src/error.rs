use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element has negative powers of t and is not in A1: {0}")]
    NonRegular(String),

    #[error("subspace {0} is not irreducible")]
    Reducible(String),

    #[error("search for {what} exceeded the D-degree cap {cap}")]
    SearchCapExceeded { what: &'static str, cap: u32 },

    #[error("e*f = {0} is not a polynomial in D alone")]
    ProductNotInKD(String),

    #[error("theta cannot be applied to the non-regular element {0}")]
    ThetaOnLaurent(String),

    #[error("exp(ad q(D)) does not terminate on the non-regular element {0}")]
    ExpAdDOnLaurent(String),

    #[error("image computation only accepts words of exp(ad p(t)) generators")]
    NotTFixing,

    #[error("image subspace did not stabilize within {rounds} rounds")]
    Unstable { rounds: usize },

    #[error("image certificate failed: {0}")]
    CertFailed(String),

    #[error("scenario step `{step}` mismatch: expected {expected}, computed {computed}")]
    ScenarioMismatch { step: String, expected: String, computed: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
