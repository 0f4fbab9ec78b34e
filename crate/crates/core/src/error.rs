use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no proxy cluster: the box contains no open cluster to anchor to")]
    NoCluster,
    #[error("query ({x:.3}, {y:.3}) lies outside the safe region of radius {safe}")]
    OutOfMargin { x: f64, y: f64, safe: i32 },
    #[error("no open right-most path between {from:?} and {to:?}")]
    Disconnected { from: (i32, i32), to: (i32, i32) },
    #[error("search budget of {budget} exceeded: {context}")]
    Budget { budget: u64, context: String },
    #[error("degenerate shape: {0}")]
    Degenerate(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Format(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
