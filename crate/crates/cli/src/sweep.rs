//! Parameter sweeps: many generated instances, one CSV row each.

use std::io::Write;
use std::time::Instant;

use chordkit_core::identities::ReportValue;
use chordkit_core::{verify_identity, Configuration, Verdict};
use rayon::prelude::*;

use crate::generate::{generate_instance, Distribution, GenParams};
use crate::instance::Kind;
use crate::verify::VerifyOptions;
use crate::CliError;

pub const CSV_HEADER: [&str; 10] = [
    "n",
    "trial",
    "seed",
    "verdict",
    "residual",
    "relative_residual",
    "precision_bits",
    "min_gap",
    "max_reciprocal",
    "runtime_ms",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub kind: Kind,
    pub dist: Distribution,
    pub n_min: usize,
    pub n_max: usize,
    pub n_step: usize,
    pub trials: usize,
    pub seed: u64,
    pub params: GenParams,
    pub verify: VerifyOptions,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub verdict: Verdict,
    pub residual: String,
    pub relative_residual: String,
    pub precision_bits: String,
    pub min_gap: String,
    pub max_reciprocal: String,
    pub runtime_ms: f64,
}

impl SweepRow {
    fn record(&self) -> [String; 10] {
        [
            self.n.to_string(),
            self.trial.to_string(),
            self.seed.to_string(),
            self.verdict.name().to_string(),
            self.residual.clone(),
            self.relative_residual.clone(),
            self.precision_bits.clone(),
            self.min_gap.clone(),
            self.max_reciprocal.clone(),
            format!("{:.3}", self.runtime_ms),
        ]
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of one trial: `splitmix64(splitmix64(splitmix64(master) ^ n) ^ trial)`.
pub fn trial_seed(master: u64, n: usize, trial: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ n as u64) ^ trial as u64)
}

/// Every `(n, trial)` pair, each verified independently, rows in `(n, trial)` order.
pub fn run_sweep(opts: &SweepOptions) -> Result<Vec<SweepRow>, CliError> {
    if opts.trials == 0 || opts.n_step == 0 || opts.n_min > opts.n_max || opts.n_min < 2 {
        return Err(CliError::Usage(format!(
            "invalid sweep range: n {}..={} step {}, {} trials (need 2 <= n_min <= n_max, step >= 1, trials >= 1)",
            opts.n_min, opts.n_max, opts.n_step, opts.trials
        )));
    }
    let ctx = opts.verify.context()?;
    let jobs: Vec<(usize, usize)> = (opts.n_min..=opts.n_max)
        .step_by(opts.n_step)
        .flat_map(|n| (0..opts.trials).map(move |t| (n, t)))
        .collect();
    jobs.par_iter()
        .map(|&(n, trial)| {
            let seed = trial_seed(opts.seed, n, trial);
            let inst = generate_instance(opts.kind, n, opts.dist, seed, &opts.params)?;
            let config: Configuration = inst.to_configuration()?;
            let start = Instant::now();
            let report = verify_identity(&config, &ctx).map_err(|e| CliError::Usage(e.to_string()))?;
            let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
            let float = |x: &Option<chordkit_core::BigFloat>| x.as_ref().map(|v| v.to_scientific()).unwrap_or_default();
            Ok(SweepRow {
                n,
                trial,
                seed,
                verdict: report.verdict,
                residual: report.residual.as_ref().map(value_text).unwrap_or_default(),
                relative_residual: report.relative_residual.as_ref().map(value_text).unwrap_or_default(),
                precision_bits: report.precision_bits.map(|p| p.to_string()).unwrap_or_default(),
                min_gap: float(&report.condition.min_gap),
                max_reciprocal: float(&report.condition.max_reciprocal),
                runtime_ms,
            })
        })
        .collect()
}

fn value_text(v: &ReportValue) -> String {
    match v {
        ReportValue::Float(x) => x.to_scientific(),
        ReportValue::Interval(i) => i.midpoint().to_scientific(),
        other => other.to_string(),
    }
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for row in rows {
        w.write_record(row.record()).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))
}
