use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("precondition `{condition}` fails at {witness}: {detail}")]
    Precondition {
        condition: String,
        witness: String,
        detail: String,
    },
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("unsupported degree {degree}: {reason}")]
    UnsupportedDegree { degree: usize, reason: String },
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
