//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CrError {
    #[error("operands use different variable tables")]
    TableMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable `{0}` has no real/imaginary pairing")]
    UnpairedVariable(String),

    #[error("non-canonical rational `{0}`")]
    NonCanonicalRational(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("jet orders are incompatible: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("jet order {0} is too small; need at least {1}")]
    OrderTooSmall(usize, usize),

    #[error("operation requires an exact (polynomial) jet")]
    NonExactJet,

    #[error("block sizes {0:?} are not palindromic")]
    NotPalindromic(Vec<usize>),

    #[error("conjugation identity failed at power {0}")]
    ConjugationIdentity(usize),

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("Levi kernel is not rank 1: {0}")]
    KernelRank(String),

    #[error("matrix is not nilpotent at the given point")]
    NotNilpotent,

    #[error("field is not a simultaneous eigenvector; components have bi-degrees {0:?}")]
    NotEigenvector(Vec<(String, String)>),

    #[error("unknown catalog field `{0}`")]
    UnknownField(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("jet is not normalized: {0}")]
    Unnormalized(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("family certification mismatch for {0}")]
    CertificationMismatch(String),

    #[error("verification degree {0} exceeds guaranteed range {1}")]
    DegreeOutOfRange(usize, usize),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type CrResult<T> = Result<T, CrError>;
