use thiserror::Error;

use crate::ramsey::Witness;

#[derive(Debug, Error)]
pub enum Error {
    #[error("search budget exhausted")]
    BudgetExceeded,
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: usize },
    #[error("digraph is not a counterexample: found {witness:?}")]
    NotACounterexample { witness: Witness },
    #[error("certificate cache corrupt: {0}")]
    CacheCorrupt(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
