//! Exit-code contract and error reporting.

use serde_json::json;
use spin7_core::Error;

pub const OK: u8 = 0;
pub const USAGE: u8 = 2;
pub const NOT_CONVERGED: u8 = 3;
pub const FAILURE: u8 = 4;
pub const COUNTEREXAMPLE: u8 = 5;
pub const INCONCLUSIVE: u8 = 6;

#[derive(Debug)]
pub enum Failure {
    /// Bad flags or parameters.
    Usage(String),
    /// Initialization, integration, reconstruction or other computation failure.
    Compute(Error),
    /// Output could not be written.
    Io(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => USAGE,
            Failure::Compute(_) | Failure::Io(_) => FAILURE,
        }
    }

    /// Diagnostic written to stderr.
    pub fn report(&self) -> String {
        match self {
            Failure::Usage(m) => format!("error: {m}"),
            Failure::Compute(e) => json!({"error": kind(e), "message": e.to_string()}).to_string(),
            Failure::Io(m) => json!({"error": "io", "message": m}).to_string(),
        }
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidParameters(_) => "invalid_parameters",
        Error::InvalidBundle(_) => "invalid_bundle",
        Error::InvalidSet(_) => "invalid_set",
        Error::InvalidRequest(_) => "invalid_request",
        Error::NumericDomain(_) => "numeric_domain",
        Error::EigenFailure(_) => "eigen_failure",
        Error::SolverIncomplete { .. } => "solver_incomplete",
        Error::Initialization(_) => "initialization",
        Error::ReconstructionDomain { .. } => "reconstruction_domain",
        Error::DomainAnomaly(_) => "domain_anomaly",
        Error::FormulaDiscrepancy(_) => "formula_discrepancy",
        Error::NonSimpleRoot(_) => "non_simple_root",
        Error::Parse(_) => "parse",
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameters(_) | Error::InvalidBundle(_) | Error::InvalidSet(_) | Error::Parse(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Compute(other),
        }
    }
}
