use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("no decomposition matches the pinwheel constraints: {0}")]
    NoMatchingDecomposition(String),
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(usize, usize),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("invalid digit {0:?} in label (digits are 1..5)")]
    InvalidDigit(char),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("context patch too small: {0}")]
    ContextTooSmall(String),
    #[error("degenerate arc: {0}")]
    DegenerateArc(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
