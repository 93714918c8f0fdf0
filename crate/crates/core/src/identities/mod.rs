//! The reciprocal chord-product identities, the interpolation identities
//! behind them, and the top-level verification entry point.

mod circle;
mod interpolation;
mod line;
mod verify;

pub use circle::{
    alternating_reciprocal_sum, exact_jane_rhs, jane_sides, mcdougall_residual, odd_circle_control, AlternatingSum,
    JaneSides,
};
pub use interpolation::{lagrange_interpolate, power_sum_identity, InterpolationProblem};
pub use line::{collinear_alternating_sum, collinear_residual, collinear_residual_at};
pub use verify::{
    verify_identity, Condition, Configuration, EvaluationPath, ReportValue, ResidualReport, RESIDUAL_CONVENTION,
};

use thiserror::Error;

use crate::arithmetic::Backend;
use crate::geometry::GeometryError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("the identity needs an even number of points, got {0}")]
    OddCount(usize),
    #[error("the odd-count control needs an odd number of points, at least 3, got {0}")]
    NotOddControl(usize),
    #[error("nodes {first} and {second} coincide")]
    DuplicateNode { first: usize, second: usize },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("no nodes given")]
    Empty,
    #[error("a denominator cannot be separated from zero at this precision")]
    Indeterminate,
    #[error("the {backend} backend cannot evaluate this configuration: {reason}")]
    UnsupportedBackend { backend: Backend, reason: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
