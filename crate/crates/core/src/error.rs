use thiserror::Error;

/// Errors raised by the solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),

    #[error("series diverged after {terms} terms: {context}")]
    Divergence { terms: usize, context: String },

    #[error("index {index} outside table range 0..={max}")]
    Range { index: usize, max: usize },

    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("non-finite value produced in {0}")]
    NonFinite(String),

    #[error("no root bracketed: {0}")]
    NoRoot(String),

    #[error("recurrence breakdown at level {level}")]
    Breakdown { level: usize },

    #[error("configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
