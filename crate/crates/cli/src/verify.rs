//! The `verify` command without any I/O.

use std::time::Instant;

use chordkit_core::{verify_identity, Backend, IdentityError, NumericContext, Verdict};

use crate::instance::{digest, InstanceFile};
use crate::report::{ReportFile, Timings};
use crate::CliError;

pub const DEFAULT_PRECISION: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub backend: Backend,
    pub precision: u32,
    /// Double the precision up to the cap instead of a single evaluation.
    pub escalate: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { backend: Backend::BigFloat, precision: DEFAULT_PRECISION, escalate: false }
    }
}

impl VerifyOptions {
    pub fn context(&self) -> Result<NumericContext, CliError> {
        let ctx = if self.escalate {
            NumericContext::escalating(self.backend, self.precision)
        } else {
            NumericContext::new(self.backend, self.precision)
        };
        ctx.map_err(|e| CliError::Usage(e.to_string()))
    }
}

/// Process exit code for a verdict.
pub fn exit_code(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::IdentityConsistent => 0,
        Verdict::Violated => 1,
        Verdict::Degenerate => 2,
    }
}

/// Parses and verifies an instance given as raw file bytes.
///
/// Coincident points yield a degenerate report rather than an error.
pub fn verify_bytes(bytes: &[u8], opts: &VerifyOptions) -> Result<ReportFile, CliError> {
    let ctx = opts.context()?;
    let start = Instant::now();
    let text = std::str::from_utf8(bytes).map_err(|e| CliError::Usage(format!("instance is not UTF-8: {e}")))?;
    let id = digest(bytes);
    let parsed = InstanceFile::from_json(text).and_then(|inst| inst.to_configuration());
    let parse_ms = ms(start);
    let config = match parsed {
        Ok(c) => c,
        Err(CliError::Degenerate(reason)) => {
            return Ok(ReportFile::rejected(id, opts.backend.name(), reason, Timings { parse_ms, verify_ms: 0.0 }))
        }
        Err(e) => return Err(e),
    };
    let start = Instant::now();
    let report = verify_identity(&config, &ctx).map_err(|e| match e {
        IdentityError::UnsupportedBackend { .. } => CliError::Usage(e.to_string()),
        other => CliError::Identity(other),
    })?;
    let verify_ms = ms(start);
    Ok(ReportFile::from_report(id, &report, Timings { parse_ms, verify_ms }))
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}
