use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group parameter n = {0} is not allowed, |n| must be at least 2")]
    InvalidN(i64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("mismatched group parameters: {0} and {1}")]
    MismatchedN(i64, i64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A result failed its own exact re-verification. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}
