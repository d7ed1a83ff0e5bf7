use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text (group files, braid files, diagram files, ...).
    #[error("parse error: {0}")]
    Parse(String),
    /// Structural validation failed (non-group table, boundary mismatch, ...).
    #[error("validation error: {0}")]
    Validation(String),
    /// A desk-scale resource guard was exceeded.
    #[error("guard exceeded: {0}")]
    Guard(String),
    /// Operation called with incompatible arguments (arity mismatch, bad index, ...).
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
    pub fn guard(msg: impl Into<String>) -> Self {
        Error::Guard(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
