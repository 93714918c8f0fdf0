//! Arithmetic backends: exact rationals, Gaussian rationals, multi-precision
//! floats and outward-rounded intervals, plus signed log-space products and
//! the precision-escalation driver.

pub mod bigfloat;
mod complex;
mod context;
mod escalation;
mod interval;
mod rational;
mod scalar;
mod signed_log;

pub use bigfloat::{BigFloat, Round, MIN_PRECISION};
pub use complex::{rational_circle_point, Complex, ComplexFloat, GaussianRational};
pub use context::{Backend, NumericContext, DEFAULT_SCHEDULE, PRECISION_CAP, PRECISION_FLOOR};
pub use escalation::{
    classify, escalate_precision, Escalation, EscalationError, ResidualSample, TraceStep, Verdict,
};
pub use interval::IntervalValue;
pub use rational::ExactRational;
pub use scalar::{Real, RealScalar, Scalar};
pub use signed_log::{signed_log_product, SignedLogValue};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid decimal literal {0:?}")]
    ParseDecimal(String),
    #[error("precision {0} bits outside [{PRECISION_FLOOR}, {PRECISION_CAP}]")]
    InvalidPrecision(u32),
    #[error("escalation schedule must be nonempty and strictly increasing: {0:?}")]
    InvalidSchedule(Vec<u32>),
}
