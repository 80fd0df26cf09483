use thiserror::Error;

use crate::model::{StateId, VarId};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("assignment has {got} entries but the instance has {expected} variables")]
    AssignmentLength { expected: usize, got: usize },

    #[error("variable {var}: state {state} is out of range (domain size {size})")]
    StateOutOfRange {
        var: VarId,
        state: StateId,
        size: usize,
    },

    #[error("variable {0} is out of range")]
    VariableOutOfRange(VarId),

    #[error("variable {var}: transition {from} -> {to} is not permitted")]
    TransitionNotPermitted {
        var: VarId,
        from: StateId,
        to: StateId,
    },

    #[error("order is not a permutation of the instance variables")]
    InvalidOrder,

    #[error("instance size n = {0} is below the minimum of 2")]
    SizeTooSmall(usize),

    #[error("exact integer range exceeded: {0}")]
    Overflow(String),

    #[error("invalid instance: {}", .0.join("; "))]
    InvalidInstance(Vec<String>),

    #[error("invalid ascent at step {step}: {reason}")]
    InvalidAscent { step: usize, reason: String },

    #[error("build-time self-check failed: {0}")]
    SelfCheck(String),

    #[error("format error: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
