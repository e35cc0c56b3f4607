//! Error type shared across the crate.

use thiserror::Error;

/// Errors surfaced by constructors, exact computations and bound evaluators.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Two objects that must agree on a dimension do not.
    #[error("dimension mismatch: {context} (expected {expected}, got {got})")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    /// A real or integer parameter is outside the operation's domain.
    #[error("domain violation: {0}")]
    Domain(String),

    /// An exact computation would exceed a resource cap. Caps exist so that
    /// "exact" never silently degrades into "sampled".
    #[error("cap exceeded: {what} needs {requested}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    /// A code spec or serialized document could not be parsed.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
