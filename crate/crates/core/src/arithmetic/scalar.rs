use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{BigFloat, ExactRational, Round};

/// Field operations shared by every backend.
///
/// Values carry their own precision (if any), so constants are produced
/// relative to an existing value with [`Scalar::zero_like`] and friends.
pub trait Scalar:
    Clone + fmt::Debug + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// `None` when `rhs` is (or may be) zero.
    fn checked_div(&self, rhs: &Self) -> Option<Self>;
    /// `q` in this value's backend and precision.
    fn embed_rational(&self, q: &ExactRational) -> Self;

    fn powu(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// Ordered scalars.
pub trait RealScalar: Scalar {
    fn abs(&self) -> Self;
    /// `-1`, `+1`, or `0` when the value is zero or its sign is not certain.
    fn signum(&self) -> i8;
}

/// Real backends with a working precision and elementary functions.
pub trait Real: RealScalar {
    fn from_rational(q: &ExactRational, prec: u32) -> Self;
    fn pi(prec: u32) -> Self;
    fn precision(&self) -> u32;
    fn sin_cos(&self) -> (Self, Self);
    /// `None` unless the argument is certainly positive.
    fn ln(&self) -> Option<Self>;
    fn exp(&self) -> Self;
    fn atan(&self) -> Self;
    fn sqrt(&self) -> Option<Self>;
    fn mul_pow2(&self, k: i64) -> Self;
    /// Same value at another precision (outward for enclosures).
    fn reprec(&self, prec: u32) -> Self;
    /// Point estimate (the value itself, or an interval midpoint).
    fn estimate(&self) -> BigFloat;
    /// Upper bound on `|self|`.
    fn magnitude_bound(&self) -> BigFloat;

    fn sin(&self) -> Self {
        self.sin_cos().0
    }

    fn cos(&self) -> Self {
        self.sin_cos().1
    }
}

impl Scalar for ExactRational {
    fn zero_like(&self) -> Self {
        ExactRational::zero()
    }
    fn one_like(&self) -> Self {
        ExactRational::one()
    }
    fn is_zero(&self) -> bool {
        ExactRational::is_zero(self)
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        ExactRational::checked_div(self, rhs).ok()
    }
    fn embed_rational(&self, q: &ExactRational) -> Self {
        q.clone()
    }
}

impl RealScalar for ExactRational {
    fn abs(&self) -> Self {
        ExactRational::abs(self)
    }
    fn signum(&self) -> i8 {
        ExactRational::signum(self)
    }
}

impl Scalar for BigFloat {
    fn zero_like(&self) -> Self {
        BigFloat::zero(self.precision())
    }
    fn one_like(&self) -> Self {
        BigFloat::one(self.precision())
    }
    fn is_zero(&self) -> bool {
        BigFloat::is_zero(self)
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        BigFloat::checked_div(self, rhs)
    }
    fn embed_rational(&self, q: &ExactRational) -> Self {
        BigFloat::from_rational(q, self.precision(), Round::Nearest)
    }
}

impl RealScalar for BigFloat {
    fn abs(&self) -> Self {
        BigFloat::abs(self)
    }
    fn signum(&self) -> i8 {
        BigFloat::signum(self)
    }
}

impl Real for BigFloat {
    fn from_rational(q: &ExactRational, prec: u32) -> Self {
        BigFloat::from_rational(q, prec, Round::Nearest)
    }
    fn pi(prec: u32) -> Self {
        BigFloat::pi(prec)
    }
    fn precision(&self) -> u32 {
        BigFloat::precision(self)
    }
    fn sin_cos(&self) -> (Self, Self) {
        BigFloat::sin_cos(self)
    }
    fn ln(&self) -> Option<Self> {
        BigFloat::ln(self)
    }
    fn exp(&self) -> Self {
        BigFloat::exp(self)
    }
    fn atan(&self) -> Self {
        BigFloat::atan(self)
    }
    fn sqrt(&self) -> Option<Self> {
        BigFloat::sqrt(self)
    }
    fn mul_pow2(&self, k: i64) -> Self {
        BigFloat::mul_pow2(self, k)
    }
    fn reprec(&self, prec: u32) -> Self {
        self.with_precision(prec, Round::Nearest)
    }
    fn estimate(&self) -> BigFloat {
        self.clone()
    }
    fn magnitude_bound(&self) -> BigFloat {
        BigFloat::abs(self)
    }
}
