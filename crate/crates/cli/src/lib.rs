//! Experiment runner over the tfzn core library: TOML configuration,
//! deterministic JSON/CSV output, and the acceptance suite.

pub mod config;
pub mod experiments;
pub mod jsonfmt;
pub mod report;
pub mod suite;

use thiserror::Error;

/// Failure modes mapped to process exit codes: configuration and
/// precondition problems exit 2, violated correctness assertions
/// exit 1.
#[derive(Debug, Error)]
pub enum RunError {
    #[error("config error: {0}")]
    Config(String),
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Assertion(_) => 1,
            RunError::Config(_) | RunError::Io(_) | RunError::Json(_) => 2,
        }
    }
}

impl From<tfzn_core::Error> for RunError {
    fn from(e: tfzn_core::Error) -> Self {
        // every core error is a violated precondition of some requested
        // computation, i.e. a configuration problem at the CLI surface
        RunError::Config(e.to_string())
    }
}
