use thiserror::Error;

/// Errors raised by the algebra, partition and probability layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size limit exceeded: {what} = {value} (cap {cap})")]
    SizeLimit {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("order error: {0}")]
    Order(String),
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("missing table entry for word \"{0}\"")]
    MissingEntry(String),
    #[error("degree {degree} exceeds the functional's max degree {max}")]
    DegreeOverflow { degree: usize, max: usize },
    #[error("method {method} is not available for {kind}")]
    UnknownMethod { method: String, kind: String },
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
