use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph has {0} vertices, limit is {1}")]
    TooManyVertices(usize, usize),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid edge label {0}")]
    InvalidLabel(String),
    #[error("invalid type label `{0}`")]
    InvalidType(String),
    #[error("the group is infinite")]
    Infinite,
    #[error("enumeration exceeded the cap of {0}")]
    CapExceeded(usize),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
