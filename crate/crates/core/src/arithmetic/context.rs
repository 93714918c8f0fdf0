use std::fmt;
use std::str::FromStr;

use super::ArithmeticError;

/// Lowest precision any float or interval evaluation may use.
pub const PRECISION_FLOOR: u32 = 24;
/// Highest precision an escalation schedule may reach.
pub const PRECISION_CAP: u32 = 4096;
pub const DEFAULT_SCHEDULE: [u32; 7] = [64, 128, 256, 512, 1024, 2048, 4096];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    ExactRational,
    GaussianRational,
    BigFloat,
    Interval,
}

impl Backend {
    pub fn is_exact(self) -> bool {
        matches!(self, Backend::ExactRational | Backend::GaussianRational)
    }

    pub fn name(self) -> &'static str {
        match self {
            Backend::ExactRational => "exact",
            Backend::GaussianRational => "gaussian",
            Backend::BigFloat => "bigfloat",
            Backend::Interval => "interval",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" | "exact-rational" => Ok(Backend::ExactRational),
            "gaussian" | "gaussian-rational" => Ok(Backend::GaussianRational),
            "bigfloat" => Ok(Backend::BigFloat),
            "interval" => Ok(Backend::Interval),
            other => Err(format!("unknown backend {other:?}")),
        }
    }
}

/// Backend selection plus the precisions an evaluation runs at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericContext {
    backend: Backend,
    schedule: Vec<u32>,
}

impl NumericContext {
    /// Single evaluation at `precision_bits`.
    pub fn new(backend: Backend, precision_bits: u32) -> Result<Self, ArithmeticError> {
        Self::with_schedule(backend, vec![precision_bits])
    }

    /// Doubling schedule from `start` up to [`PRECISION_CAP`].
    pub fn escalating(backend: Backend, start: u32) -> Result<Self, ArithmeticError> {
        check(start)?;
        let schedule = std::iter::successors(Some(start), |&p| p.checked_mul(2))
            .take_while(|&p| p <= PRECISION_CAP)
            .collect();
        Self::with_schedule(backend, schedule)
    }

    pub fn with_schedule(backend: Backend, schedule: Vec<u32>) -> Result<Self, ArithmeticError> {
        if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ArithmeticError::InvalidSchedule(schedule));
        }
        for &p in &schedule {
            check(p)?;
        }
        Ok(Self { backend, schedule })
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    /// First precision of the schedule.
    pub fn precision_bits(&self) -> u32 {
        self.schedule[0]
    }

    pub fn schedule(&self) -> &[u32] {
        &self.schedule
    }
}

impl Default for NumericContext {
    fn default() -> Self {
        Self { backend: Backend::BigFloat, schedule: DEFAULT_SCHEDULE.to_vec() }
    }
}

fn check(p: u32) -> Result<(), ArithmeticError> {
    if (PRECISION_FLOOR..=PRECISION_CAP).contains(&p) {
        Ok(())
    } else {
        Err(ArithmeticError::InvalidPrecision(p))
    }
}
