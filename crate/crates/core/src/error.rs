use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("invalid tangle: {0}")]
    InvalidTangle(String),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("incompatible operands: {0}")]
    IncompatibleOperands(String),

    #[error("oracle undefined for deformed Frobenius algebra")]
    OracleUndefined,

    #[error("unsupported ring kind: {0}")]
    UnsupportedRing(String),

    #[error("{0}")]
    Json(String),

    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
