use thiserror::Error;

/// Errors surfaced by the library. Variants map onto the CLI exit-code contract.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid bundle: {0}")]
    InvalidBundle(String),
    #[error("invalid set: {0}")]
    InvalidSet(String),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("numeric domain error: {0}")]
    NumericDomain(String),
    #[error("eigen solver failure: {0}")]
    EigenFailure(String),
    #[error("solver incomplete: {message}")]
    SolverIncomplete {
        message: String,
        candidates: Vec<[f64; 4]>,
    },
    #[error("initialization failed: {0}")]
    Initialization(String),
    #[error("reconstruction domain error at sample {index} (eta = {eta}): {message}")]
    ReconstructionDomain {
        index: usize,
        eta: f64,
        message: String,
    },
    #[error("domain anomaly: {0}")]
    DomainAnomaly(String),
    #[error("formula discrepancy: {0}")]
    FormulaDiscrepancy(String),
    #[error("non-simple root at {0}")]
    NonSimpleRoot(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
