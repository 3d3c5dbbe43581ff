use std::io;

use thiserror::Error;

/// Errors produced by the transforms, the dictionary, the container format
/// and the benchmark harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("corrupt stream: {0}")]
    CorruptStream(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("wrong dictionary: container expects fingerprint {expected:016x}, got {actual:016x}")]
    WrongDictionary { expected: u64, actual: u64 },

    #[error("roundtrip verification failed for {file} with {method}")]
    Verification { file: String, method: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn corrupt(msg: impl Into<String>) -> Error {
    Error::CorruptStream(msg.into())
}

pub(crate) fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}
