//! Verification kernel for reciprocal chord-product identities on concyclic
//! and collinear point sets.

pub mod arithmetic;
pub mod geometry;
pub mod identities;

pub use arithmetic::{
    Backend, BigFloat, Complex, ExactRational, GaussianRational, IntervalValue, NumericContext, Real, Scalar,
    SignedLogValue, Verdict,
};
pub use geometry::{normalize_circle, CircleConfig, CollinearConfig, GeometryError, HalfAngle};
pub use identities::{verify_identity, Configuration, IdentityError, ResidualReport};
