//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("node id {node} out of range for graph with {count} nodes")]
    NodeOutOfRange { node: usize, count: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{n} qubits exceeds the statevector capacity of {max}")]
    Capacity { n: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("corpus error at line {line}: {msg}")]
    Corpus { line: usize, msg: String },

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("matching does not cover the graph: {0}")]
    MatchingIncomplete(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
