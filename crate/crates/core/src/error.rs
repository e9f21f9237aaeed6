use crate::interval::IntervalError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Interval(#[from] IntervalError),
    #[error("matrix is singular to working precision: {0}")]
    Singular(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("Newton iteration failed: {0}")]
    Newton(String),
    #[error("proof failed: {0}")]
    Proof(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("missing upstream certificate: {0}")]
    MissingCertificate(String),
    #[error("initial guess generation failed: {0}")]
    Guess(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed data: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
