use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse exact scalar {0:?}")]
    Parse(String),
    #[error("invalid signature: {0}")]
    Signature(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("point or vector outside the domain: {0}")]
    Domain(String),
    #[error("invalid degree: {0}")]
    Degree(String),
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
