use thiserror::Error;

/// Errors produced by game construction, estimation, and the data pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value is out of range or inconsistent with the game.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The operation is well-defined but not supported for this game shape.
    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),

    /// The game violates a structural precondition of the operation.
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    /// The requested solution concept has no solution for this game.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// A dataset record failed to parse or validate; `line` is 1-based.
    #[error("line {line}: {message}")]
    Dataset { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
