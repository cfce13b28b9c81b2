use osculant::algebra::AlgebraError;
use osculant::cayley::CayleyError;
use osculant::hesse::HesseError;
use osculant::intersect::IntersectError;
use osculant::syzygy::SyzygyError;
use thiserror::Error;

use crate::expr::ExprError;

/// Failures of a command, each mapped to a process exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    /// Bad flags or arguments.
    #[error("{0}")]
    Usage(String),
    /// Unparseable parameter expression.
    #[error(transparent)]
    Expr(#[from] ExprError),
    /// `t³ + 27 = 0`.
    #[error("t^3 + 27 = 0: the pencil member is singular (smoothness is equivalent to t^3 + 27 != 0)")]
    SingularMember,
    /// A mathematical check could not be completed.
    #[error("{0}")]
    Math(String),
    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    /// Process exit status.
    #[must_use]
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Expr(_) | CliError::SingularMember => 3,
            CliError::Math(_) => 2,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<HesseError> for CliError {
    fn from(e: HesseError) -> Self {
        match e {
            HesseError::SingularMember => CliError::SingularMember,
            HesseError::MissingEps => CliError::Usage(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<CayleyError> for CliError {
    fn from(e: CayleyError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<IntersectError> for CliError {
    fn from(e: IntersectError) -> Self {
        match e {
            IntersectError::LabelOutOfRange(_) => CliError::Usage(e.to_string()),
            IntersectError::NotSextactic { .. } => CliError::Math(e.to_string()),
            IntersectError::Hesse(h) => h.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<SyzygyError> for CliError {
    fn from(e: SyzygyError) -> Self {
        match e {
            SyzygyError::LabelOutOfRange(_)
            | SyzygyError::RepeatedLabel(_)
            | SyzygyError::NotEquianharmonic
            | SyzygyError::BadPrime(_) => CliError::Usage(e.to_string()),
            SyzygyError::InconclusiveBound { .. } | SyzygyError::PartitionFailure { .. } => {
                CliError::Math(e.to_string())
            }
            SyzygyError::Hesse(h) => h.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}
