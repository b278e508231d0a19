use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0}")]
    Ring(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("type error: {0}")]
    Type(String),
    #[error("missing generator {0}")]
    MissingGenerator(String),
    #[error("signature mismatch for {0}")]
    Signature(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("invalid cube: {0}")]
    Cube(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
