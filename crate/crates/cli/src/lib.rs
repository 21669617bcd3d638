//! Library behind the `mutsurf` binary: job documents, the analysis
//! pipeline with its deterministic report, and chart rendering.

pub mod job;
pub mod report;
pub mod svg;

pub use job::{Analysis, JobSpec};
pub use report::{run, Report, SCHEMA_VERSION};

/// Pipeline failures, split by exit class: 2 for parse errors, 3 for
/// validation errors, 4 for internal cross-check failures.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Validation(mutsurf::Error),
    Internal(mutsurf::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Validation(_) => "validation",
            CliError::Internal(_) => "internal-inconsistency",
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(msg) => write!(f, "{msg}"),
            CliError::Validation(e) | CliError::Internal(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}
