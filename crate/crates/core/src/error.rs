use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count mismatch: expected {expected}, found {found}")]
    Length { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("index out of range: {0}")]
    Index(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("ill-conditioned calibration matrix (condition number {0:.3e})")]
    Conditioning(f64),

    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
