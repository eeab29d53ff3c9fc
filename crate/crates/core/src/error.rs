use thiserror::Error;

/// Errors raised by the algebra, series and filtration machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error at line {line}, field `{field}`: {message}")]
    Parse {
        line: usize,
        field: String,
        message: String,
    },

    #[error(
        "filtration did not converge after {rounds} rounds (last dims {last:?}, previous {previous:?})"
    )]
    NonConvergence {
        rounds: usize,
        last: Vec<usize>,
        previous: Vec<usize>,
    },

    #[error("singular system: {0}")]
    Singular(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
