//! Binary floating point with a per-value precision in bits.
//!
//! A nonzero value is `±mant · 2^exp` where `mant` has exactly `prec` bits.
//! The exponent is an `i64`, so products of thousands of tiny chords never
//! underflow. Addition, subtraction, multiplication, division and square root
//! are correctly rounded in every [`Round`] mode; the elementary functions in
//! [`elementary`] are faithfully rounded (error below one ulp).

mod decimal;
pub mod elementary;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactRational;

/// Smallest precision a [`BigFloat`] may carry.
pub const MIN_PRECISION: u32 = 24;

/// Rounding direction for a single operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Round {
    /// To nearest, ties to even.
    Nearest,
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
    TowardZero,
}

#[derive(Clone)]
pub struct BigFloat {
    negative: bool,
    mant: BigUint,
    exp: i64,
    prec: u32,
}

fn check_prec(prec: u32) {
    assert!(prec >= MIN_PRECISION, "precision {prec} below the {MIN_PRECISION}-bit floor");
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        check_prec(prec);
        Self { negative: false, mant: BigUint::zero(), exp: 0, prec }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_bigint(&BigInt::from(n), 0, prec, Round::Nearest)
    }

    /// `n · 2^exp`, rounded.
    pub fn from_bigint(n: &BigInt, exp: i64, prec: u32, rnd: Round) -> Self {
        Self::round_parts(n.is_negative(), n.magnitude().clone(), exp, prec, rnd)
    }

    /// Exact `f64` value rounded to `prec` bits. Panics on NaN or infinity.
    pub fn from_f64(x: f64, prec: u32) -> Self {
        let q = ExactRational::from_f64(x).expect("finite f64");
        Self::from_rational(&q, prec, Round::Nearest)
    }

    /// Correctly rounded conversion of an exact rational.
    pub fn from_rational(q: &ExactRational, prec: u32, rnd: Round) -> Self {
        check_prec(prec);
        if q.is_zero() {
            return Self::zero(prec);
        }
        let negative = q.signum() < 0;
        let num = q.numer().magnitude();
        let den = q.denom().magnitude();
        Self::quotient(negative, num, den, 0, prec, rnd)
    }

    /// Rounds `±mag · 2^exp` to `prec` bits.
    pub(crate) fn round_parts(negative: bool, mag: BigUint, exp: i64, prec: u32, rnd: Round) -> Self {
        check_prec(prec);
        if mag.is_zero() {
            return Self::zero(prec);
        }
        let bits = mag.bits();
        let prec64 = u64::from(prec);
        if bits <= prec64 {
            let shift = prec64 - bits;
            return Self { negative, mant: mag << shift, exp: exp - shift as i64, prec };
        }
        let mut shift = bits - prec64;
        let mut q = &mag >> shift;
        let tz = mag.trailing_zeros().unwrap_or(0);
        let exact = tz >= shift;
        let increment = match rnd {
            Round::Nearest => {
                let half = mag.bit(shift - 1);
                let below_half = tz < shift - 1;
                half && (below_half || q.bit(0))
            }
            Round::TowardZero => false,
            Round::Down => negative && !exact,
            Round::Up => !negative && !exact,
        };
        if increment {
            q += 1u32;
            if q.bits() > prec64 {
                q >>= 1u32;
                shift += 1;
            }
        }
        Self { negative, mant: q, exp: exp + shift as i64, prec }
    }

    /// Rounded `num / den · 2^exp` for positive integers.
    fn quotient(negative: bool, num: &BigUint, den: &BigUint, exp: i64, prec: u32, rnd: Round) -> Self {
        let want = u64::from(prec) + 2 + den.bits();
        let k = want.saturating_sub(num.bits());
        let (q, r) = (num << k).div_rem(den);
        let (mag, e) = if r.is_zero() {
            (q, exp - k as i64)
        } else {
            ((q << 1u32) | BigUint::one(), exp - k as i64 - 1)
        };
        Self::round_parts(negative, mag, e, prec, rnd)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.negative && !self.is_zero()
    }

    pub fn signum(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.negative {
            -1
        } else {
            1
        }
    }

    /// Position just above the leading bit: `2^(top-1) <= |x| < 2^top`.
    /// `None` for zero.
    pub fn top_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.exp + self.mant.bits() as i64)
    }

    /// Unit in the last place at this value's precision.
    pub fn ulp(&self) -> Option<BigFloat> {
        (!self.is_zero()).then(|| Self::from_bigint(&BigInt::one(), self.exp, self.prec, Round::Nearest))
    }

    pub fn abs(&self) -> Self {
        Self { negative: false, ..self.clone() }
    }

    /// Exact `self · 2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self { exp: self.exp + k, ..self.clone() }
    }

    /// Same value rounded to a different precision.
    pub fn with_precision(&self, prec: u32, rnd: Round) -> Self {
        Self::round_parts(self.negative, self.mant.clone(), self.exp, prec, rnd)
    }

    fn signed_mant(&self) -> BigInt {
        BigInt::from_biguint(if self.negative { Sign::Minus } else { Sign::Plus }, self.mant.clone())
    }

    pub fn to_rational(&self) -> ExactRational {
        if self.is_zero() {
            return ExactRational::zero();
        }
        let m = self.signed_mant();
        if self.exp >= 0 {
            ExactRational::from_integer(m << self.exp as u64)
        } else {
            ExactRational::new(m, BigInt::one() << (-self.exp) as u64).expect("nonzero power of two")
        }
    }

    /// Nearest `f64`; saturates to ±inf or 0 outside the `f64` range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.with_precision(53, Round::Nearest);
        let m = r.mant.to_f64().expect("53-bit mantissa") * if r.negative { -1.0 } else { 1.0 };
        let mut e = r.exp;
        let mut v = m;
        while e > 0 && v.is_finite() {
            let step = e.min(1000);
            v *= 2f64.powi(step as i32);
            e -= step;
        }
        while e < 0 && v != 0.0 {
            let step = (-e).min(1000);
            v *= 2f64.powi(-(step as i32));
            e += step;
        }
        v
    }

    /// Approximate `log2 |x|` as an `f64`; `-inf` for zero. Deterministic in the exact value.
    pub fn log2_abs(&self) -> f64 {
        let Some(top) = self.top_exponent() else {
            return f64::NEG_INFINITY;
        };
        let bits = self.mant.bits();
        let lead = if bits > 53 { &self.mant >> (bits - 53) } else { self.mant.clone() << (53 - bits) };
        let frac = lead.to_f64().expect("53 bits") / 2f64.powi(53);
        top as f64 + frac.log2()
    }

    /// Rounded sum at `prec` bits.
    pub fn add_round(&self, rhs: &Self, prec: u32, rnd: Round) -> Self {
        if rhs.is_zero() {
            return self.with_precision(prec, rnd);
        }
        if self.is_zero() {
            return rhs.with_precision(prec, rnd);
        }
        let (big, small) = if self.top_exponent() >= rhs.top_exponent() { (self, rhs) } else { (rhs, self) };
        let top_big = big.top_exponent().unwrap();
        let top_small = small.top_exponent().unwrap();
        // Below this position the smaller operand only acts as a sticky bit.
        let floor = big.exp.min(top_big - i64::from(prec) - 6) - 2;
        if top_small <= floor + 2 {
            let shifted = big.signed_mant() << (big.exp - floor) as u64;
            let tiny = if small.negative { -1 } else { 1 };
            let sum = shifted + BigInt::from(tiny);
            return Self::from_bigint(&sum, floor, prec, rnd);
        }
        let e = big.exp.min(small.exp);
        let a = big.signed_mant() << (big.exp - e) as u64;
        let b = small.signed_mant() << (small.exp - e) as u64;
        Self::from_bigint(&(a + b), e, prec, rnd)
    }

    pub fn sub_round(&self, rhs: &Self, prec: u32, rnd: Round) -> Self {
        self.add_round(&-rhs, prec, rnd)
    }

    pub fn mul_round(&self, rhs: &Self, prec: u32, rnd: Round) -> Self {
        Self::round_parts(self.negative != rhs.negative, &self.mant * &rhs.mant, self.exp + rhs.exp, prec, rnd)
    }

    /// Rounded quotient; `None` when dividing by zero.
    pub fn div_round(&self, rhs: &Self, prec: u32, rnd: Round) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(prec));
        }
        Some(Self::quotient(self.negative != rhs.negative, &self.mant, &rhs.mant, self.exp - rhs.exp, prec, rnd))
    }

    /// Rounded square root; `None` for negative input.
    pub fn sqrt_round(&self, prec: u32, rnd: Round) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero(prec));
        }
        if self.negative {
            return None;
        }
        let want = 2 * u64::from(prec) + 4;
        let mut k = want.saturating_sub(self.mant.bits());
        if (self.exp - k as i64).rem_euclid(2) != 0 {
            k += 1;
        }
        let m = &self.mant << k;
        let s = m.sqrt();
        let rem = &m - &s * &s;
        let half_exp = (self.exp - k as i64) / 2;
        let (mag, e) = if rem.is_zero() { (s, half_exp) } else { ((s << 1u32) | BigUint::one(), half_exp - 1) };
        Some(Self::round_parts(false, mag, e, prec, rnd))
    }

    pub fn sqrt(&self) -> Option<Self> {
        self.sqrt_round(self.prec, Round::Nearest)
    }

    pub fn recip(&self) -> Option<Self> {
        Self::one(self.prec).div_round(self, self.prec, Round::Nearest)
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        self.div_round(rhs, self.prec.max(rhs.prec), Round::Nearest)
    }

    /// Integer power by repeated squaring (rounded after every product).
    pub fn powi(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    fn cmp_abs(&self, rhs: &Self) -> Ordering {
        match (self.top_exponent(), rhs.top_exponent()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) if a != b => a.cmp(&b),
            _ => {
                let e = self.exp.min(rhs.exp);
                let a = &self.mant << (self.exp - e) as u64;
                let b = &rhs.mant << (rhs.exp - e) as u64;
                a.cmp(&b)
            }
        }
    }

    pub(crate) fn mantissa(&self) -> &BigUint {
        &self.mant
    }

    pub(crate) fn exponent(&self) -> i64 {
        self.exp
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.signum(), other.signum()) {
            (a, b) if a != b => a.cmp(&b),
            (0, _) => Ordering::Equal,
            (1, _) => self.cmp_abs(other),
            _ => other.cmp_abs(self),
        }
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_scientific())
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.to_scientific(), self.prec)
    }
}

macro_rules! float_binop {
    ($tr:ident, $method:ident, $round:ident) => {
        impl<'a> $tr<&'a BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: &'a BigFloat) -> BigFloat {
                self.$round(rhs, self.prec.max(rhs.prec), Round::Nearest)
            }
        }
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $method(self, rhs: BigFloat) -> BigFloat {
                (&self).$method(&rhs)
            }
        }
    };
}

float_binop!(Add, add, add_round);
float_binop!(Sub, sub, sub_round);
float_binop!(Mul, mul, mul_round);

impl<'a> Div<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    /// Panics on division by zero.
    fn div(self, rhs: &'a BigFloat) -> BigFloat {
        self.checked_div(rhs).expect("BigFloat division by zero")
    }
}

impl Div for BigFloat {
    type Output = BigFloat;
    fn div(self, rhs: BigFloat) -> BigFloat {
        &self / &rhs
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(mut self) -> BigFloat {
        if !self.is_zero() {
            self.negative = !self.negative;
        }
        self
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::frac(n, d)
    }

    /// Reference rounding of an exact rational to `prec` bits, computed with
    /// rational floor arithmetic only.
    fn oracle_round(x: &ExactRational, prec: u32, rnd: Round) -> ExactRational {
        if x.is_zero() {
            return ExactRational::zero();
        }
        let pow2 = |e: i64| -> ExactRational {
            let one = num_bigint::BigInt::one();
            if e >= 0 {
                ExactRational::from_integer(one << e as u64)
            } else {
                ExactRational::one().checked_div(&ExactRational::from_integer(one << (-e) as u64)).unwrap()
            }
        };
        let ax = x.abs();
        let mut e = ax.numer().bits() as i64 - ax.denom().bits() as i64 - i64::from(prec);
        let scaled = loop {
            let s = ax.checked_div(&pow2(e)).unwrap();
            if s >= pow2(i64::from(prec)) {
                e += 1;
            } else if s < pow2(i64::from(prec) - 1) {
                e -= 1;
            } else {
                break s;
            }
        };
        let fl = ExactRational::from_integer(scaled.floor());
        let frac = &scaled - &fl;
        let up = &fl + &ExactRational::one();
        let away = !frac.is_zero();
        let negative = x.signum() < 0;
        let mag = match rnd {
            Round::TowardZero => fl,
            Round::Down => if negative && away { up } else { fl },
            Round::Up => if !negative && away { up } else { fl },
            Round::Nearest => match frac.cmp(&ExactRational::frac(1, 2)) {
                Ordering::Less => fl,
                Ordering::Greater => up,
                Ordering::Equal => if fl.numer().is_even() { fl } else { up },
            },
        };
        let v = &mag * &pow2(e);
        if negative { -v } else { v }
    }

    #[test]
    fn one_third_directed() {
        let third = q(1, 3);
        let lo = BigFloat::from_rational(&third, 24, Round::Down);
        let hi = BigFloat::from_rational(&third, 24, Round::Up);
        assert!(lo.to_rational() < third && third < hi.to_rational());
        assert_eq!(hi.sub_round(&lo, 64, Round::Nearest), lo.ulp().unwrap());
    }

    #[test]
    fn ties_to_even() {
        // 2^24 + 1 is exactly halfway between two 24-bit neighbours.
        let x = BigFloat::from_i64((1 << 24) + 1, 24);
        assert_eq!(x, BigFloat::from_i64(1 << 24, 24));
        let y = BigFloat::from_i64((1 << 24) + 3, 24);
        assert_eq!(y, BigFloat::from_i64((1 << 24) + 4, 24));
    }

    #[test]
    fn carry_out_on_rounding() {
        let x = BigFloat::from_i64((1 << 25) - 1, 24);
        assert_eq!(x, BigFloat::from_i64(1 << 25, 24));
        assert_eq!(x.mant.bits(), 24);
    }

    #[test]
    fn far_apart_addition_rounds_like_exact() {
        let big = BigFloat::from_i64(1, 30);
        let tiny = BigFloat::from_rational(&q(1, 3), 30, Round::Nearest).mul_pow2(-500);
        for rnd in [Round::Nearest, Round::Down, Round::Up, Round::TowardZero] {
            for (a, b) in [(&big, &tiny), (&big, &-&tiny), (&-&big, &tiny)] {
                let exact = &a.to_rational() + &b.to_rational();
                let got = a.add_round(b, 30, rnd).to_rational();
                assert_eq!(got, oracle_round(&exact, 30, rnd), "{rnd:?}");
            }
        }
    }

    #[test]
    fn subtraction_cancels_exactly() {
        let a = BigFloat::from_rational(&q(7, 5), 80, Round::Nearest);
        assert!((&a - &a).is_zero());
        let b = a.mul_pow2(-1);
        assert_eq!((&a - &b).to_rational(), &a.to_rational() - &b.to_rational());
    }

    #[test]
    fn sqrt_exact_and_rounded() {
        let nine = BigFloat::from_i64(9, 40);
        assert_eq!(nine.sqrt().unwrap(), BigFloat::from_i64(3, 40));
        let two = BigFloat::from_i64(2, 100);
        let s = two.sqrt().unwrap();
        let lo = two.sqrt_round(100, Round::Down).unwrap();
        let hi = two.sqrt_round(100, Round::Up).unwrap();
        assert!((&lo * &lo).to_rational() < ExactRational::from(2) || lo.mul_round(&lo, 400, Round::Nearest).to_rational() < ExactRational::from(2));
        assert!(hi.mul_round(&hi, 400, Round::Nearest).to_rational() > ExactRational::from(2));
        assert!(s == lo || s == hi);
        assert!(BigFloat::from_i64(-1, 30).sqrt().is_none());
    }

    #[test]
    fn division_by_zero_is_none() {
        assert!(BigFloat::one(30).checked_div(&BigFloat::zero(30)).is_none());
    }

    #[test]
    fn ordering_by_value() {
        let a = BigFloat::from_f64(-2.5, 40);
        let b = BigFloat::from_f64(0.125, 64);
        let c = BigFloat::from_f64(0.125, 30);
        assert!(a < b);
        assert_eq!(b, c);
        assert!(BigFloat::zero(30) < b);
        assert!(a < BigFloat::zero(50));
    }

    #[test]
    fn f64_round_trip() {
        for x in [0.1, -3.75, 1e-300, 6.02e23, f64::MIN_POSITIVE] {
            assert_eq!(BigFloat::from_f64(x, 64).to_f64(), x);
        }
        assert_eq!(BigFloat::from_f64(1.0, 64).mul_pow2(-2000).to_f64(), 0.0);
    }

    #[test]
    fn log2_estimate() {
        assert_eq!(BigFloat::from_i64(8, 64).log2_abs(), 3.0);
        assert!((BigFloat::from_f64(0.3, 64).log2_abs() - 0.3f64.log2()).abs() < 1e-12);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rational() -> impl Strategy<Value = ExactRational> {
            (-10_000i64..10_000, 1i64..10_000, -80i64..80).prop_map(|(n, d, s)| {
                let base = ExactRational::frac(n, d);
                if s >= 0 {
                    &base * &ExactRational::from_integer(num_bigint::BigInt::one() << s as u64)
                } else {
                    base.checked_div(&ExactRational::from_integer(num_bigint::BigInt::one() << (-s) as u64)).unwrap()
                }
            })
        }

        fn mode() -> impl Strategy<Value = Round> {
            prop_oneof![Just(Round::Nearest), Just(Round::Down), Just(Round::Up), Just(Round::TowardZero)]
        }

        proptest! {
            #[test]
            fn field_ops_correctly_rounded(a in rational(), b in rational(), prec in 24u32..120, rnd in mode()) {
                let fa = BigFloat::from_rational(&a, prec + 7, Round::Nearest);
                let fb = BigFloat::from_rational(&b, prec + 3, Round::Nearest);
                let (ea, eb) = (fa.to_rational(), fb.to_rational());
                prop_assert_eq!(fa.add_round(&fb, prec, rnd).to_rational(), oracle_round(&(&ea + &eb), prec, rnd));
                prop_assert_eq!(fa.sub_round(&fb, prec, rnd).to_rational(), oracle_round(&(&ea - &eb), prec, rnd));
                prop_assert_eq!(fa.mul_round(&fb, prec, rnd).to_rational(), oracle_round(&(&ea * &eb), prec, rnd));
                if !eb.is_zero() {
                    prop_assert_eq!(fa.div_round(&fb, prec, rnd).unwrap().to_rational(), oracle_round(&ea.checked_div(&eb).unwrap(), prec, rnd));
                }
            }

            #[test]
            fn sqrt_brackets(a in rational(), prec in 24u32..200) {
                let a = a.abs();
                let fa = BigFloat::from_rational(&a, prec, Round::Nearest);
                let lo = fa.sqrt_round(prec, Round::Down).unwrap().to_rational();
                let hi = fa.sqrt_round(prec, Round::Up).unwrap().to_rational();
                let ea = fa.to_rational();
                prop_assert!(&lo * &lo <= ea);
                prop_assert!(&hi * &hi >= ea);
                if lo != hi {
                    let ulp = BigFloat::from_rational(&lo, prec, Round::Nearest).ulp();
                    if let Some(u) = ulp {
                        prop_assert!(&hi - &lo <= u.to_rational());
                    }
                }
            }
        }
    }
}
