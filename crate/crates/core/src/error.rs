use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix has {0} columns; at most 64 are supported")]
    TooManyColumns(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("elements must be distinct, got `{0}` twice")]
    DuplicateElements(String),
    #[error("label `{0}` is already an element of the matroid")]
    LabelCollision(String),
    #[error("{labels} labels for a matrix with {cols} columns")]
    LabelCountMismatch { labels: usize, cols: usize },
    #[error("ground set has {size} elements; this operation allows at most {limit}")]
    GroundSetTooLarge { size: usize, limit: usize },
    #[error("graph has {0} edges; at most 64 are supported")]
    TooManyEdges(usize),
    #[error("elements `{0}` and `{1}` are in series")]
    SeriesPairPresent(String, String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("catalog entry `{name}` failed validation: {reason}")]
    TranscriptionInvalid { name: String, reason: String },
    #[error("io error: {0}")]
    Io(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
