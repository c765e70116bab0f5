use thiserror::Error;

use crate::VertexToken;

/// Errors surfaced by generators, functors, and analyses.
#[derive(Debug, Error)]
pub enum Error {
    /// A token does not belong to the queried graph's token scheme.
    #[error("invalid token {token}: {reason}")]
    InvalidToken { token: String, reason: String },

    /// A family or functor parameter is out of range.
    #[error("invalid parameter {name}={value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: i64,
        reason: String,
    },

    /// A structural precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A resource budget was exhausted; results are never silently truncated.
    #[error("{what} budget exceeded (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: u64 },

    /// The operation is not defined for this graph (e.g. no declared line).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A recovered edge coloring disagrees with the declared one.
    #[error("coloring mismatch at {0}")]
    ColoringMismatch(String),
}

impl Error {
    pub fn invalid_token(token: &VertexToken, reason: impl Into<String>) -> Self {
        Error::InvalidToken {
            token: token.render(),
            reason: reason.into(),
        }
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
