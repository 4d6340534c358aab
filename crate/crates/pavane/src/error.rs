use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid class descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("insufficient terms: need at least {needed}, got {got}")]
    InsufficientTerms { needed: usize, got: usize },

    #[error("cache I/O error: {0}")]
    CacheIo(#[from] io::Error),

    #[error("cache record malformed: {0}")]
    CacheFormat(String),

    #[error("resource ceiling exceeded: requested n = {requested}, ceiling = {ceiling}")]
    CeilingExceeded { requested: usize, ceiling: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
