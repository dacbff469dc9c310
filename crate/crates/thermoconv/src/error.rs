use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("support of the first argument is not contained in the support of the second")]
    SupportViolation,

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("no sign change found while bracketing: {0}")]
    BracketNotFound(String),

    #[error("optimal infidelity is not monotone in m near m = {m}: {detail}")]
    Monotonicity { m: u64, detail: String },

    #[error("regime not supported by this formula: {0}")]
    Regime(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
