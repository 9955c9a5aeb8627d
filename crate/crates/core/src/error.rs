use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid number {0:?}")]
    BadNumber(String),
    #[error("subtraction is not defined for infinite values")]
    InfiniteSubtraction,
    #[error("subtraction would produce a negative value")]
    NegativeDifference,
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("more than {cap} paths")]
    PathCapExceeded { cap: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("level {requested} exceeds the truncation level {max}")]
    BeyondTruncation { requested: usize, max: usize },
    #[error("vertex set error: {0}")]
    VertexSet(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("infinite value encountered at {0}")]
    InfiniteValue(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
