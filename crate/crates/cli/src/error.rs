use goldbach_grover::{InstanceError, QdynError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("unresolved within the prime budget: {}", join(.0))]
    Unresolved(Vec<u64>),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("integrator failure: {0}")]
    Integrator(#[from] QdynError),
    #[error("prime budget exhausted after {tried} primes; survivors: {}", join(.survivors))]
    BudgetExhausted { tried: usize, survivors: Vec<u64> },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Unresolved(_) => 2,
            CliError::Instance(InstanceError::MultipleMatches { .. }) => 3,
            CliError::Instance(InstanceError::NoMatch { .. }) => 4,
            CliError::Instance(_) => 1,
            CliError::Integrator(_) => 5,
            CliError::BudgetExhausted { .. } => 6,
            CliError::Verification(_) => 7,
        }
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
