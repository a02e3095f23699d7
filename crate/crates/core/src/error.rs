use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("key {0} is not part of the ambient basis")]
    UnknownKey(String),

    #[error("ambient basis mismatch")]
    AmbientMismatch,

    #[error("structural error: {0}")]
    Structural(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{line}:{column}: arity error: {message}")]
    Arity {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown operad `{key}`; valid keys: {}", valid.join(", "))]
    UnknownOperad { key: String, valid: Vec<String> },

    #[error("morphism mismatch: {0}")]
    MorphismMismatch(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
