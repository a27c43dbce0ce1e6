use thiserror::Error;

/// Errors produced anywhere in the torsion pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("prime {0} is not a good odd prime for this curve")]
    GoodPrimeRequired(u64),
    #[error("reduced curve has no F_{0}-rational point")]
    NoRationalPoint(u64),
    #[error("lattice basis is linearly dependent")]
    DependentBasis,
    #[error("precision p^N too small for height bound; raise N")]
    PrecisionTooSmall,
    #[error("no coordinate is a unit on this affine patch")]
    NeedPatchChange,
    #[error("pseudo-addition map B is required but not available")]
    NeedBQF,
    #[error("formula pack required: {0}")]
    MissingPack(String),
    #[error("pack parse error at line {line}, column {col}: {msg}")]
    PackParse { line: usize, col: usize, msg: String },
    #[error("pack validation failed: {0}")]
    PackValidation(String),
    #[error("point is not on the Kummer model")]
    OffModel,
    #[error("divisor is not in general position")]
    NotGeneralPosition,
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),
    #[error("prime pool exhausted: {0}")]
    PrimePoolExhausted(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
