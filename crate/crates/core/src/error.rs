use thiserror::Error;

/// Errors produced by code construction, decoding and simulation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A code or channel parameter is outside its valid range.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// The requested object exceeds a configured size cap.
    #[error("size limit exceeded: {what} = {value} (max {max})")]
    SizeLimit {
        what: &'static str,
        value: usize,
        max: usize,
    },
    /// Input lengths do not agree with the code.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    /// A code or decoder descriptor could not be parsed.
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    /// A simulation configuration is invalid.
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
