use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHom(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not an involution: {0}")]
    NotInvolution(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("missing data: {0}")]
    Missing(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unbounded: {0}")]
    Unbounded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
