use thiserror::Error;

use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no Ore witness with denominator length <= {bound}")]
    OreNotFound { bound: usize },
    #[error("{0} is not a declared Ore generator")]
    NotInOreSet(String),
    #[error("incompatible Ore set: {0}")]
    Incompatible(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
