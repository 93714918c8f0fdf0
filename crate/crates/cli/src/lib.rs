//! Library behind the `chordkit` binary: instance and report formats,
//! generators, sweeps and the command implementations.

pub mod generate;
pub mod instance;
pub mod joseph;
pub mod report;
pub mod sweep;
pub mod verify;

pub use generate::{generate_instance, Distribution, GenParams};
pub use instance::{InstanceFile, Kind};
pub use report::ReportFile;
pub use sweep::{run_sweep, trial_seed, SweepOptions};
pub use verify::{exit_code, verify_bytes, VerifyOptions};

use chordkit_core::IdentityError;
use thiserror::Error;

/// Exit code for usage and parse errors.
pub const USAGE_EXIT: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Identity(IdentityError),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Degenerate(_) => 2,
            _ => USAGE_EXIT,
        }
    }
}
