use std::path::PathBuf;

use thiserror::Error;

/// A violated scenario invariant. Each variant names the offending field.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("{field} = {value} is not a finite number")]
    NotFinite { field: &'static str, value: f64 },
    #[error("{field} = {value} is outside the probability range [0, 1]")]
    ProbabilityRange { field: &'static str, value: f64 },
    #[error("{field} = {value} must be strictly positive")]
    NotPositive { field: &'static str, value: f64 },
    #[error("pd = {pd} is below pf = {pf}; the detector is miscalibrated")]
    Miscalibrated { pd: f64, pf: f64 },
    #[error("the detected-idle event has zero probability (p0 = {p0}, pd = {pd}, pf = {pf})")]
    ImpossibleConditioning { p0: f64, pd: f64, pf: f64 },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("missing required key `{0}`")]
    MissingKey(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed CSV at line {line}: {message}")]
    Csv { line: u64, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
