use thiserror::Error;

use crate::ring::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("ring axioms violated: {0}")]
    InvalidRing(ValidationReport),

    #[error("not a ring homomorphism: {law} fails at {witness:?}")]
    InvalidHom { law: &'static str, witness: Vec<usize> },

    #[error("not a module: {law} fails at {witness:?}")]
    InvalidModule { law: &'static str, witness: Vec<usize> },

    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: &'static str, limit: usize },

    /// Two independent decision procedures disagreed on the same input.
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),

    #[error("{0}")]
    Parse(#[from] crate::spec::ParseError),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
