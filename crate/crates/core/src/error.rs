use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field F_{p} is too small for an algebra of dimension {dim} (need p > dim)")]
    FieldTooSmall { p: u64, dim: usize },

    #[error("the radical is not a graded subspace: {0}")]
    NonGradedRadical(String),

    #[error("not a complex: {0}")]
    NotAComplex(String),

    #[error("not a chain map: {0}")]
    NotAChainMap(String),

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("computation too large: {0}")]
    TooLarge(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
