use std::io;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("operand has an unknown tail beyond its window; truncate it explicitly first")]
    TruncatedOperand,

    #[error("unknown kernel id {0:?}")]
    UnknownKernel(String),

    #[error("kernel evaluation failed: {0}")]
    Kernel(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("bernoulli cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
