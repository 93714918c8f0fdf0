use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{BigFloat, ExactRational, Real, RealScalar, Round, Scalar};

/// Closed interval `[lo, hi]` with outward rounding.
///
/// Every operation rounds `lo` down and `hi` up, so the exact result of the
/// operation on any points of the inputs stays inside the output.
#[derive(Clone, PartialEq, Eq)]
pub struct IntervalValue {
    lo: BigFloat,
    hi: BigFloat,
}

impl IntervalValue {
    /// Panics unless `lo <= hi`.
    pub fn new(lo: BigFloat, hi: BigFloat) -> Self {
        assert!(lo <= hi, "interval bounds out of order: {lo:?} > {hi:?}");
        Self { lo, hi }
    }

    pub fn point(x: BigFloat) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    fn prec(&self) -> u32 {
        self.lo.precision().max(self.hi.precision())
    }

    pub fn contains(&self, q: &ExactRational) -> bool {
        self.lo.to_rational() <= *q && *q <= self.hi.to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    /// `hi - lo`, rounded up.
    pub fn width(&self) -> BigFloat {
        self.hi.sub_round(&self.lo, self.prec(), Round::Up)
    }

    pub fn midpoint(&self) -> BigFloat {
        let p = self.prec();
        self.lo.add_round(&self.hi, p + 1, Round::Nearest).mul_pow2(-1).with_precision(p, Round::Nearest)
    }

    /// Encloses `v ± (2 ulp(v) + extra)` where `v` is faithfully rounded.
    fn widen(v: BigFloat, extra: &BigFloat, prec: u32) -> Self {
        let slack = match v.ulp() {
            Some(u) => u.mul_pow2(1).add_round(extra, prec, Round::Up),
            None => extra.clone(),
        };
        Self {
            lo: v.sub_round(&slack, prec, Round::Down),
            hi: v.add_round(&slack, prec, Round::Up),
        }
    }

    fn clamp_unit(mut self) -> Self {
        let p = self.prec();
        let one = BigFloat::one(p);
        let minus_one = -BigFloat::one(p);
        if self.lo < minus_one {
            self.lo = minus_one.clone();
        }
        if self.hi > one {
            self.hi = one;
        }
        if self.lo > self.hi {
            self.lo = self.hi.clone();
        }
        self
    }

    fn endpoint_products(&self, rhs: &Self, prec: u32, rnd: Round) -> [BigFloat; 4] {
        [
            self.lo.mul_round(&rhs.lo, prec, rnd),
            self.lo.mul_round(&rhs.hi, prec, rnd),
            self.hi.mul_round(&rhs.lo, prec, rnd),
            self.hi.mul_round(&rhs.hi, prec, rnd),
        ]
    }
}

fn min4(v: [BigFloat; 4]) -> BigFloat {
    v.into_iter().min().unwrap()
}

fn max4(v: [BigFloat; 4]) -> BigFloat {
    v.into_iter().max().unwrap()
}

impl Add for IntervalValue {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let p = self.prec().max(rhs.prec());
        Self { lo: self.lo.add_round(&rhs.lo, p, Round::Down), hi: self.hi.add_round(&rhs.hi, p, Round::Up) }
    }
}

impl Sub for IntervalValue {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let p = self.prec().max(rhs.prec());
        Self { lo: self.lo.sub_round(&rhs.hi, p, Round::Down), hi: self.hi.sub_round(&rhs.lo, p, Round::Up) }
    }
}

impl Mul for IntervalValue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let p = self.prec().max(rhs.prec());
        Self { lo: min4(self.endpoint_products(&rhs, p, Round::Down)), hi: max4(self.endpoint_products(&rhs, p, Round::Up)) }
    }
}

impl Neg for IntervalValue {
    type Output = Self;
    fn neg(self) -> Self {
        Self { lo: -self.hi, hi: -self.lo }
    }
}

impl Scalar for IntervalValue {
    fn zero_like(&self) -> Self {
        Self::point(BigFloat::zero(self.prec()))
    }
    fn one_like(&self) -> Self {
        Self::point(BigFloat::one(self.prec()))
    }
    fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.contains_zero() {
            return None;
        }
        let p = self.prec().max(rhs.prec());
        let q = |a: &BigFloat, b: &BigFloat, r| a.div_round(b, p, r).unwrap();
        let down = [q(&self.lo, &rhs.lo, Round::Down), q(&self.lo, &rhs.hi, Round::Down), q(&self.hi, &rhs.lo, Round::Down), q(&self.hi, &rhs.hi, Round::Down)];
        let up = [q(&self.lo, &rhs.lo, Round::Up), q(&self.lo, &rhs.hi, Round::Up), q(&self.hi, &rhs.lo, Round::Up), q(&self.hi, &rhs.hi, Round::Up)];
        Some(Self { lo: min4(down), hi: max4(up) })
    }
    fn embed_rational(&self, q: &ExactRational) -> Self {
        <Self as Real>::from_rational(q, self.prec())
    }
}

impl RealScalar for IntervalValue {
    fn abs(&self) -> Self {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            -self.clone()
        } else {
            let m = self.lo.abs().max(self.hi.clone());
            Self { lo: BigFloat::zero(self.prec()), hi: m }
        }
    }

    fn signum(&self) -> i8 {
        if self.lo.signum() > 0 {
            1
        } else if self.hi.signum() < 0 {
            -1
        } else {
            0
        }
    }
}

impl Real for IntervalValue {
    fn from_rational(q: &ExactRational, prec: u32) -> Self {
        Self { lo: BigFloat::from_rational(q, prec, Round::Down), hi: BigFloat::from_rational(q, prec, Round::Up) }
    }

    fn pi(prec: u32) -> Self {
        Self::widen(BigFloat::pi(prec), &BigFloat::zero(prec), prec)
    }

    fn precision(&self) -> u32 {
        self.prec()
    }

    fn sin_cos(&self) -> (Self, Self) {
        // |sin' | <= 1 and |cos'| <= 1: enclose via midpoint and radius.
        let p = self.prec();
        let mid = self.midpoint();
        let rad = self.hi.sub_round(&mid, p, Round::Up).max(mid.sub_round(&self.lo, p, Round::Up));
        let (s, c) = mid.sin_cos();
        (Self::widen(s, &rad, p).clamp_unit(), Self::widen(c, &rad, p).clamp_unit())
    }

    fn ln(&self) -> Option<Self> {
        if self.lo.signum() <= 0 {
            return None;
        }
        let p = self.prec();
        let zero = BigFloat::zero(p);
        let lo = Self::widen(self.lo.ln()?, &zero, p).lo;
        let hi = Self::widen(self.hi.ln()?, &zero, p).hi;
        Some(Self { lo, hi })
    }

    fn exp(&self) -> Self {
        let p = self.prec();
        let zero = BigFloat::zero(p);
        let mut lo = Self::widen(self.lo.exp(), &zero, p).lo;
        if lo.signum() < 0 {
            lo = zero.clone();
        }
        let hi = Self::widen(self.hi.exp(), &zero, p).hi;
        Self { lo, hi }
    }

    fn atan(&self) -> Self {
        let p = self.prec();
        let zero = BigFloat::zero(p);
        let lo = Self::widen(self.lo.atan(), &zero, p).lo;
        let hi = Self::widen(self.hi.atan(), &zero, p).hi;
        Self { lo, hi }
    }

    fn sqrt(&self) -> Option<Self> {
        if self.hi.signum() < 0 {
            return None;
        }
        let p = self.prec();
        let lo = if self.lo.signum() <= 0 { BigFloat::zero(p) } else { self.lo.sqrt_round(p, Round::Down)? };
        Some(Self { lo, hi: self.hi.sqrt_round(p, Round::Up)? })
    }

    fn mul_pow2(&self, k: i64) -> Self {
        Self { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k) }
    }

    fn reprec(&self, prec: u32) -> Self {
        Self { lo: self.lo.with_precision(prec, Round::Down), hi: self.hi.with_precision(prec, Round::Up) }
    }

    fn estimate(&self) -> BigFloat {
        self.midpoint()
    }

    fn magnitude_bound(&self) -> BigFloat {
        self.lo.abs().max(self.hi.abs())
    }
}

impl fmt::Debug for IntervalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
