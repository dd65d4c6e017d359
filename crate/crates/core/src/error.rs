use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("truncation cap of {terms} terms reached before the series converged")]
    TruncationExceeded { terms: usize },

    #[error("series terms keep growing at n = {term}; divergence suspected")]
    DivergenceSuspected { term: usize },

    #[error("index error: {0}")]
    Index(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl QError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        QError::Domain(msg.into())
    }
}

pub type Result<T, E = QError> = std::result::Result<T, E>;
