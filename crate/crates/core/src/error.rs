use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid ring or code parameters, or operands that do not belong
    /// to the same ring.
    #[error("invalid parameters: {0}")]
    Param(String),

    #[error("element is not a unit")]
    NotAUnit,

    #[error("unrecoverable: {0}")]
    Unrecoverable(String),

    /// Inputs that could not have come from an honest encoding.
    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("shard format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}
