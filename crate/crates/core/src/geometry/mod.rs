//! Point configurations on a circle or a line: exact half-angles, chords,
//! unit parameters and chord products.

mod angle;
mod circle;
mod line;

pub use angle::HalfAngle;
pub use circle::{
    chord_distance, chord_products, normalize_circle, signed_chord, unit_parameters, ChordProducts, CircleConfig,
    EvaluatedCircle,
};
pub use line::CollinearConfig;

use thiserror::Error;

use crate::arithmetic::ExactRational;

/// Indices are 0-based positions in sorted order, except where noted.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("configuration has no points")]
    Empty,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("radius must be positive, got {0}")]
    InvalidRadius(ExactRational),
    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("chord from point {0} to itself")]
    SamePoint(usize),
    /// Two points coincide. From constructors the indices refer to the input order.
    #[error("points {first} and {second} coincide")]
    DegenerateConfiguration { first: usize, second: usize },
}
