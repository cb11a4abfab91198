//! Command-line front end: catalog constructions, verification suites,
//! weight solves and closure checks, reported as JSON or text.

pub mod commands;
pub mod config;
pub mod report;
pub mod schema;
pub mod verify;

pub use config::{Format, RunConfig};
pub use report::{Item, Report, Status};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] gcs_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for anything caused by the invocation, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use gcs_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Json(_) => 2,
            CliError::Core(
                E::UnknownEntry(_)
                | E::InvalidParameter(_)
                | E::InvalidGrade(_)
                | E::InvalidDimension(_)
                | E::RepeatedVariable(_)
                | E::LevelsExceedGrade { .. }
                | E::DimensionMismatch(_)
                | E::EmptyBasis
                | E::DegeneratePair,
            ) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}
