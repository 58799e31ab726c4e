//! Crate-wide error type.
//!
//! Two families matter to callers: usage errors (malformed input, dimension
//! mismatches, off-grid values — the CLI exits 2) and hypothesis failures
//! (an operation's mathematical precondition does not hold, with a witness —
//! the CLI exits 1).

use thiserror::Error;

use crate::scalar::Rat;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("value {0} is not on the event grid; refine the grid first")]
    OffGrid(Rat),

    #[error("objects live on different event grids")]
    GridMismatch,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("invalid cell attachment: {0}")]
    Attachment(String),

    #[error("hypothesis failure: {0}")]
    Hypothesis(String),

    #[error("degree {0} exceeds the truncation degree {1}")]
    Truncation(usize, usize),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }

    /// True for failed mathematical preconditions, as opposed to malformed
    /// input.
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(self, Error::Hypothesis(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
