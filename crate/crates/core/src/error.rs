use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("arity error at slice {slice}: {message}")]
    Arity { slice: usize, message: String },

    #[error("evaluation limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("not unitary: {0}")]
    NotUnitary(String),

    #[error("not in the invertible family: {0}")]
    NotInvertibleFamily(String),

    #[error("handle state outside validated family: {0}")]
    OutsideValidatedFamily(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
