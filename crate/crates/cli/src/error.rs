use clusterforge::cases::CaseError;
use clusterforge::cluster::ClusterError;
use clusterforge::dynkin::DynkinError;
use clusterforge::laurent::LaurentError;
use clusterforge::nmatrix::NMatrixError;
use clusterforge::phi::PhiError;
use clusterforge::prepmod::PrepmodError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("undetermined: {0}")]
    Undetermined(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Verification(_) => 3,
            CliError::ResourceLimit(_) => 4,
            CliError::Undetermined(_) => 5,
        }
    }
}

pub fn invalid(msg: impl std::fmt::Display) -> CliError {
    CliError::Invalid(msg.to_string())
}

impl From<PhiError> for CliError {
    fn from(e: PhiError) -> Self {
        match e {
            PhiError::ResourceLimit { .. } => CliError::ResourceLimit(e.to_string()),
            PhiError::Undetermined { .. } => CliError::Undetermined(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<ClusterError> for CliError {
    fn from(e: ClusterError) -> Self {
        match e {
            ClusterError::LaurentViolation { .. } | ClusterError::InconsistentMatrix(..) => {
                CliError::Verification(e.to_string())
            }
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<CaseError> for CliError {
    fn from(e: CaseError) -> Self {
        match e {
            CaseError::Phi(p) => p.into(),
            CaseError::Cluster(c) => c.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

macro_rules! invalid_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Invalid(e.to_string())
            }
        })*
    };
}

invalid_from!(PrepmodError, NMatrixError, LaurentError, DynkinError, std::io::Error, serde_json::Error);
