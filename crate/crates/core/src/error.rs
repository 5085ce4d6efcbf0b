use thiserror::Error;

/// A text-format error pinned to a 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("instance too large for exact decomposition: {vertices} vertices exceeds limit {limit}; use heuristic_decomposition instead")]
    TooLarge { vertices: usize, limit: usize },

    #[error("cannot build smooth decomposition: {0}")]
    Construction(String),

    #[error("decomposition does not match graph: {0}")]
    Mismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
