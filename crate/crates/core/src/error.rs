use thiserror::Error;

/// Errors produced by family construction, transformation and search.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set size {0} is outside 1..=64")]
    GroundSetSize(usize),

    #[error("set {set} is not a subset of [{n}]")]
    SetOutOfRange { set: String, n: usize },

    #[error("element {element} is outside [{n}]")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
