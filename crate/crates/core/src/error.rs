//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),

    /// A construction axiom failed; the message names the axiom and a witness.
    #[error("axiom violation: {0}")]
    Axiom(String),

    /// Operands live on incompatible ground sets or dimensions.
    #[error("ground set mismatch: {0}")]
    GroundMismatch(String),

    /// A precondition of an operation was not met.
    #[error("invalid argument: {0}")]
    Invalid(String),

    /// An internal consistency check failed; signals a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn axiom(msg: impl Into<String>) -> Self {
        Error::Axiom(msg.into())
    }

    pub fn ground(msg: impl Into<String>) -> Self {
        Error::GroundMismatch(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
