use thiserror::Error;

use crate::linalg::FieldSpec;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("map does not send the given subspaces into each other (witness vector {witness})")]
    NotInduced { witness: String },

    #[error("d∘d ≠ 0 starting in degree {0}")]
    DSquared(usize),

    #[error("invalid filtration: {0}")]
    Filtration(String),

    #[error("invalid algebra: {0}")]
    Algebra(String),

    #[error("invalid module: {0}")]
    Module(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("page {0} was not computed")]
    PageOutOfRange(usize),

    #[error("bounds too small: {0}")]
    Bounds(String),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
