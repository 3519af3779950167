use thiserror::Error;

use crate::randomized::SamplingTranscript;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An algorithm was called on a graph outside its domain.
    #[error("{algorithm}: precondition violated: {reason}")]
    Precondition {
        algorithm: &'static str,
        reason: String,
    },

    #[error("certified mode supports side size up to {cap}, got {n}; use heuristic mode")]
    CapExceeded { n: usize, cap: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("sampling not accepted after {} retries", .0.retries_used)]
    RetriesExhausted(Box<SamplingTranscript>),

    /// A constructed bihole fell short of its proven guarantee. Always a bug.
    #[error("{algorithm}: constructed order {order} below guarantee {guarantee}")]
    GuaranteeViolated {
        algorithm: &'static str,
        order: usize,
        guarantee: String,
    },

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn precondition(algorithm: &'static str, reason: impl Into<String>) -> Self {
        Error::Precondition {
            algorithm,
            reason: reason.into(),
        }
    }
}
