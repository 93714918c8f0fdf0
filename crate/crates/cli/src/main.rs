use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chordkit_cli::generate::DEFAULT_CLUSTER_GAP;
use chordkit_cli::joseph::check_joseph;
use chordkit_cli::sweep::write_csv;
use chordkit_cli::verify::DEFAULT_PRECISION;
use chordkit_cli::{
    exit_code, generate_instance, run_sweep, verify_bytes, CliError, Distribution, GenParams, Kind, SweepOptions,
    VerifyOptions, USAGE_EXIT,
};
use chordkit_core::Backend;
use clap::{Args, Parser, Subcommand};

/// Reciprocal chord-product identities: generate, verify, sweep.
#[derive(Parser, Debug)]
#[command(name = "chordkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Verify an instance and write a report.
    Verify(VerifyArgs),
    /// Verify many generated instances and write a CSV.
    Sweep(SweepArgs),
    /// Evaluate the power-sum identity on a node file.
    CheckJoseph(JosephArgs),
}

#[derive(Args, Debug)]
struct GenParamArgs {
    /// Circle radius, decimal or p/q.
    #[arg(long, default_value = "1")]
    radius: String,
    /// Gap of the close pair for the clustered distribution.
    #[arg(long, default_value = DEFAULT_CLUSTER_GAP)]
    gap: String,
}

#[derive(Args, Debug)]
struct NumericArgs {
    /// exact, gaussian, bigfloat or interval.
    #[arg(long, default_value = "bigfloat", value_parser = parse_backend)]
    backend: Backend,
    /// Working precision in bits, or the first step when escalating.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    /// Double the precision until the verdict settles.
    #[arg(long)]
    escalate: bool,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: Kind,
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = parse_dist)]
    dist: Distribution,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    params: GenParamArgs,
    /// Output path; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Instance file.
    #[arg(long = "in")]
    input: PathBuf,
    #[command(flatten)]
    numeric: NumericArgs,
    /// Report path; the report goes to standard output if absent.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_parser = parse_kind, default_value = "circle")]
    kind: Kind,
    #[arg(long, value_parser = parse_dist, default_value = "uniform")]
    dist: Distribution,
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 12)]
    n_max: usize,
    #[arg(long, default_value_t = 2)]
    n_step: usize,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Master seed; trial seeds derive from it, n and the trial index.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    params: GenParamArgs,
    #[command(flatten)]
    numeric: NumericArgs,
    /// CSV path; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct JosephArgs {
    /// JSON file of the form {"nodes": [...]}.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    r: u32,
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    s.parse()
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    s.parse()
}

fn parse_dist(s: &str) -> Result<Distribution, String> {
    s.parse()
}

impl NumericArgs {
    fn options(&self) -> VerifyOptions {
        VerifyOptions { backend: self.backend, precision: self.precision, escalate: self.escalate }
    }
}

impl GenParamArgs {
    fn params(&self) -> GenParams {
        GenParams { radius: self.radius.clone(), gap: self.gap.clone() }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(bytes).map_err(|e| CliError::Io(e.to_string())),
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Gen(a) => {
            let inst = generate_instance(a.kind, a.n, a.dist, a.seed, &a.params.params())?;
            emit(a.out.as_deref(), inst.to_json().as_bytes())?;
            Ok(0)
        }
        Command::Verify(a) => {
            let report = verify_bytes(&read(&a.input)?, &a.numeric.options())?;
            let verdict = report.verdict()?;
            emit(a.report.as_deref(), report.to_json().as_bytes())?;
            let residual = report.residual.as_ref().map(|r| r.display()).unwrap_or_else(|| "none".into());
            let line = format!("{verdict}: residual {residual}");
            if a.report.is_some() {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            Ok(exit_code(verdict))
        }
        Command::Sweep(a) => {
            let opts = SweepOptions {
                kind: a.kind,
                dist: a.dist,
                n_min: a.n_min,
                n_max: a.n_max,
                n_step: a.n_step,
                trials: a.trials,
                seed: a.seed,
                params: a.params.params(),
                verify: a.numeric.options(),
            };
            let rows = run_sweep(&opts)?;
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            emit(a.out.as_deref(), &buf)?;
            Ok(0)
        }
        Command::CheckJoseph(a) => {
            let text = String::from_utf8(read(&a.input)?).map_err(|e| CliError::Usage(e.to_string()))?;
            let outcome = check_joseph(&text, a.r)?;
            println!("value: {}", outcome.value_text());
            println!("exact-zero: {}", outcome.exact_zero);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE_EXIT } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
