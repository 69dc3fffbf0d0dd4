//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Arguments violate an operation's preconditions.
    #[error("input error: {0}")]
    Input(String),
    /// A graph file or string could not be parsed.
    #[error("format error: {0}")]
    Format(String),
    /// An explicit enumeration would exceed its configured bound.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// An internal consistency check failed.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn invariant<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invariant(msg.into()))
}
