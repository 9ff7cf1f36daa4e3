//! Scenario runner: config files in, JSON and markdown reports out.

pub mod config;
pub mod registry;
pub mod report;
pub mod runner;
pub mod sweep;

use thiserror::Error;

pub use config::{HypersurfaceConfig, ScenarioConfig, SurfaceName};
pub use registry::{CheckId, CheckInfo, Needs, CHECKS};
pub use report::{CheckReport, CheckStatus, Environment, ScenarioReport, Verdict, SCHEMA_VERSION};
pub use runner::{run, RunOptions, Sample, DERIVATIVES_ENV, TOLERANCE_ENV};
pub use sweep::{sweep_sigma_t, SweepRow, SweepTable};

/// Process exit code for a passing run.
pub const EXIT_PASS: i32 = 0;
/// At least one check failed.
pub const EXIT_CHECK_FAILURE: i32 = 1;
/// The config file or command line was unusable.
pub const EXIT_CONFIG_ERROR: i32 = 2;
/// The model or hypersurface could not be built or evaluated.
pub const EXIT_CONSTRUCTION_ERROR: i32 = 3;
/// A report could not be written.
pub const EXIT_OUTPUT_ERROR: i32 = 4;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("config error: {0}")]
    Config(String),

    #[error("construction error ({context}): {source}")]
    Construction {
        context: String,
        #[source]
        source: crate::Error,
    },

    #[error("output error: {0}")]
    Output(String),
}

impl VerifyError {
    pub fn construction(context: impl Into<String>, source: crate::Error) -> Self {
        VerifyError::Construction {
            context: context.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            VerifyError::Config(_) => EXIT_CONFIG_ERROR,
            VerifyError::Construction { .. } => EXIT_CONSTRUCTION_ERROR,
            VerifyError::Output(_) => EXIT_OUTPUT_ERROR,
        }
    }
}
