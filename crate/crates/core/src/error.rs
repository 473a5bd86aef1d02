use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {offset}: expected one of {expected:?}, found {found}")]
    Parse {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("model error: {0}")]
    Model(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("input rejected: {0}")]
    Rejected(String),
}

pub type Result<T> = std::result::Result<T, Error>;
