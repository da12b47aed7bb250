use thiserror::Error;

use crate::ringlin::RingSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingSpec, RingSpec),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("morphism is not a monomorphism")]
    NotMono,
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("invalid construction: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
