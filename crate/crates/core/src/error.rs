use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse permutation {input:?}: {reason}")]
    ParsePermutation { input: String, reason: String },

    #[error("cannot parse bivincular pattern {input:?}: {reason}")]
    ParsePattern { input: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
