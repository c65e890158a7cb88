use thiserror::Error;

/// Hard cap on the number of enumerated tuples in any exact check.
pub const TUPLE_CAP: u128 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("instance too large: {what} needs ~{estimate} tuples (cap {cap})")]
    TooLarge {
        what: String,
        estimate: u128,
        cap: u128,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("construction failed after {attempts} attempts: {reason}")]
    AttemptsExhausted { attempts: usize, reason: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn too_large(what: impl Into<String>, estimate: u128) -> Self {
        Error::TooLarge {
            what: what.into(),
            estimate,
            cap: TUPLE_CAP,
        }
    }

    /// True for the resource-cap variant.
    pub fn is_too_large(&self) -> bool {
        matches!(self, Error::TooLarge { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Fails with `InvalidParameter` unless `cond` holds.
pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}
