use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = QuizError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum QuizError {
    /// Input violates a precondition or a type invariant.
    #[error("validation error: {0}")]
    Validation(String),

    #[error("requested {requested} questions but the pool only supports {capacity}")]
    Capacity { requested: usize, capacity: usize },

    #[error("sampling error: need {needed} distinct items, only {available} available")]
    Sampling { needed: usize, available: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: u32,
        column: u32,
        message: String,
    },

    #[error("question {question:?} cannot be encoded: {reason}")]
    Encode { question: String, reason: String },

    #[error("the bank has been closed and can no longer be modified")]
    Closed,
}

impl QuizError {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        QuizError::Validation(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        QuizError::Io {
            path: path.into(),
            source,
        }
    }
}
