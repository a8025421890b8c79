//! Crate-wide error type.
//!
//! Every fallible operation returns one of these variants; none of the
//! library entry points panic on malformed mathematical input.

use thiserror::Error;

/// Errors raised by supertropical operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on the mathematical domain was violated
    /// (e.g. inverting the additive zero, a Gaussian generator on the
    /// diagonal, or an operation outside its supported size bound).
    #[error("domain error: {0}")]
    Domain(String),

    /// Matrix/vector dimensions do not match the operation.
    #[error("shape error: {0}")]
    Shape(String),

    /// The operation requires a (suitably) nonsingular matrix.
    #[error("singularity error: {0}")]
    Singular(String),

    /// A witness-producing operation was called on input that admits no
    /// witness (e.g. asking to singularize an invertible matrix).
    #[error("witness error: {0}")]
    Witness(String),

    /// Text input could not be parsed; positions are 1-based.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// A verified construction failed its own postcondition. This signals a
    /// bug in the library, never a property of the input data.
    #[error("internal error: {0}")]
    Internal(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
    pub(crate) fn singular(msg: impl Into<String>) -> Self {
        Error::Singular(msg.into())
    }
    pub(crate) fn witness(msg: impl Into<String>) -> Self {
        Error::Witness(msg.into())
    }
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}
