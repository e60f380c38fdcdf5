use thiserror::Error;

pub type Result<T> = std::result::Result<T, EvalError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    /// Input violates a structural invariant (duplicate doc, empty list, length mismatch...).
    #[error("structural error: {0}")]
    Structural(String),

    #[error("document `{doc_id}` is not part of the evaluation unit")]
    UnknownDoc { doc_id: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),
}

impl EvalError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        EvalError::Parse {
            line,
            message: message.into(),
        }
    }
}
