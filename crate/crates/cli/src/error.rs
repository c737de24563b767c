use thiserror::Error;
use ziegler::chainring::ChainError;
use ziegler::exceptional::ExceptionalError;
use ziegler::invariant::InvariantError;
use ziegler::ringspec::RingSpecError;
use ziegler::topology::TopologyError;
use ziegler::valuegroup::ValueGroupError;

/// A failed command, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input: exit code 2.
    #[error("{0}")]
    Invalid(String),
    /// A computation bound was hit: exit code 3.
    #[error("{0}")]
    Bound(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Bound(_) => 3,
        }
    }
}

pub fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

impl From<RingSpecError> for CliError {
    fn from(e: RingSpecError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<TopologyError> for CliError {
    fn from(e: TopologyError) -> Self {
        match e {
            TopologyError::BoundExceeded { .. } | TopologyError::TooManyPoints(_) => CliError::Bound(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<ValueGroupError> for CliError {
    fn from(e: ValueGroupError) -> Self {
        match e {
            ValueGroupError::NotFound { .. } => CliError::Bound(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::ValueGroup(v) => v.into(),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<ExceptionalError> for CliError {
    fn from(e: ExceptionalError) -> Self {
        match e {
            ExceptionalError::Topology(t) => t.into(),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::RingTooLarge { .. } | ChainError::ModuleTooLarge(_) | ChainError::ExponentTooLarge { .. } => {
                CliError::Bound(e.to_string())
            }
            _ => CliError::Invalid(e.to_string()),
        }
    }
}
