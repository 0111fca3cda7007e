// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("arity {arity} exceeds the ceiling of {max} for {what}")]
    ArityTooLarge {
        what: &'static str,
        arity: usize,
        max: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed restriction: {0}")]
    MalformedRestriction(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{measure} skipped: {reason}")]
    Skipped { measure: String, reason: String },

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
