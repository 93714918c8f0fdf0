//! Exact half-angles.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;

use crate::arithmetic::{
    rational_circle_point, BigFloat, Complex, ExactRational, GaussianRational, IntervalValue, Real, Scalar,
};

/// A half-angle `t`, kept exactly.
///
/// Two shapes are supported: `a + b·π` with rational `a`, `b` (plain decimals
/// and rational multiples of π), and `atan(m) + k·π` with rational `m`
/// (points with rational coordinates). `atan` values with `m ∈ {-1, 0, 1}`
/// are stored in the first shape, so distinct representations never denote
/// the same real number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum HalfAngle {
    Linear { a: ExactRational, b: ExactRational },
    Atan { m: ExactRational, k: i64 },
}

const REFINE_START: u32 = 64;

impl HalfAngle {
    pub fn zero() -> Self {
        Self::rational(ExactRational::zero())
    }

    /// The real number `a` (radians).
    pub fn rational(a: ExactRational) -> Self {
        Self::Linear { a, b: ExactRational::zero() }
    }

    /// `b·π`.
    pub fn pi_multiple(b: ExactRational) -> Self {
        Self::Linear { a: ExactRational::zero(), b }
    }

    pub fn linear(a: ExactRational, b: ExactRational) -> Self {
        Self::Linear { a, b }
    }

    /// `atan(m)`: the half-angle of the rational circle point for parameter `m`.
    pub fn pythagorean(m: ExactRational) -> Self {
        if m.is_zero() {
            Self::zero()
        } else if m == 1 {
            Self::pi_multiple(ExactRational::frac(1, 4))
        } else if m == -1 {
            Self::pi_multiple(ExactRational::frac(-1, 4))
        } else {
            Self::Atan { m, k: 0 }
        }
    }

    pub fn is_linear(&self) -> bool {
        matches!(self, Self::Linear { .. })
    }

    /// Adds `k·π`.
    pub fn shift_pi(&self, k: i64) -> Self {
        match self {
            Self::Linear { a, b } => Self::Linear { a: a.clone(), b: b + &ExactRational::from(k) },
            Self::Atan { m, k: j } => Self::Atan { m: m.clone(), k: j + k },
        }
    }

    /// Sum of two half-angles when it stays representable.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        match (self, other) {
            (Self::Linear { a, b }, Self::Linear { a: a2, b: b2 }) => Some(Self::Linear { a: a + a2, b: b + b2 }),
            (Self::Atan { m, k }, Self::Linear { a, b }) | (Self::Linear { a, b }, Self::Atan { m, k })
                if a.is_zero() && b.denom() == &BigInt::from(1) =>
            {
                let shift: i64 = b.numer().try_into().ok()?;
                Some(Self::Atan { m: m.clone(), k: k.checked_add(shift)? })
            }
            _ => None,
        }
    }

    /// Value at `prec` bits in backend `R`.
    pub fn evaluate<R: Real>(&self, prec: u32) -> R {
        match self {
            Self::Linear { a, b } => {
                let av = R::from_rational(a, prec);
                if b.is_zero() {
                    av
                } else {
                    av + R::from_rational(b, prec) * R::pi(prec)
                }
            }
            Self::Atan { m, k } => {
                let at = R::from_rational(m, prec).atan();
                if *k == 0 {
                    at
                } else {
                    at + R::from_rational(&ExactRational::from(*k), prec) * R::pi(prec)
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.evaluate::<BigFloat>(64).to_f64()
    }

    /// The same angle reduced into `[0, π)`.
    pub fn reduce(&self) -> Self {
        match self {
            Self::Linear { a, b } if a.is_zero() => {
                let k = b.floor();
                Self::Linear { a: ExactRational::zero(), b: b - &ExactRational::from_integer(k) }
            }
            Self::Linear { a, b } => {
                // a ≠ 0 makes a/π + b irrational, so its floor is eventually decided.
                let mut prec = REFINE_START;
                loop {
                    let x = IntervalValue::from_rational(a, prec)
                        .checked_div(&IntervalValue::pi(prec))
                        .expect("π > 0")
                        + IntervalValue::from_rational(b, prec);
                    let lo = x.lo().to_rational().floor();
                    let hi = x.hi().to_rational().floor();
                    if lo == hi {
                        return Self::Linear { a: a.clone(), b: b - &ExactRational::from_integer(lo) };
                    }
                    prec *= 2;
                }
            }
            Self::Atan { m, .. } => Self::Atan { m: m.clone(), k: if m.signum() > 0 { 0 } else { 1 } },
        }
    }

    /// Exact order of the two real values.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match (self, other) {
            (Self::Linear { a, b }, Self::Linear { a: a2, b: b2 }) if b == b2 => return a.cmp(a2),
            (Self::Linear { a, b }, Self::Linear { a: a2, b: b2 }) if a == a2 => return b.cmp(b2),
            (Self::Atan { m, k }, Self::Atan { m: m2, k: k2 }) if k == k2 => return m.cmp(m2),
            _ => {}
        }
        // Remaining pairs never denote equal reals, so refinement terminates.
        let mut prec = REFINE_START;
        loop {
            let d = self.evaluate::<IntervalValue>(prec) - other.evaluate::<IntervalValue>(prec);
            if d.lo().signum() > 0 {
                return Ordering::Greater;
            }
            if d.hi().signum() < 0 {
                return Ordering::Less;
            }
            prec *= 2;
        }
    }

    /// `self - lower` at `prec` bits, exact before rounding when both are linear.
    pub fn difference<R: Real>(&self, lower: &Self, prec: u32) -> R {
        match (self, lower) {
            (Self::Linear { a, b }, Self::Linear { a: a2, b: b2 }) => Self::Linear { a: a - a2, b: b - b2 }.evaluate(prec),
            _ => {
                let guarded = prec + DIFFERENCE_GUARD;
                (self.evaluate::<R>(guarded) - lower.evaluate::<R>(guarded)).reprec(prec)
            }
        }
    }

    /// `z = e^(2it)` when it is a Gaussian rational.
    pub fn exact_circle_point(&self) -> Option<GaussianRational> {
        match self {
            Self::Atan { m, .. } => Some(rational_circle_point(m)),
            Self::Linear { a, b } if a.is_zero() => {
                let quarter_turns = b * &ExactRational::from(4);
                if quarter_turns.denom() != &BigInt::from(1) {
                    return None;
                }
                let k = quarter_turns.floor() % BigInt::from(4);
                let k: i64 = k.try_into().expect("reduced mod 4");
                Some(Complex::i_pow(&ExactRational::one(), k))
            }
            Self::Linear { .. } => None,
        }
    }
}

/// Extra bits for differences that are not formed exactly.
const DIFFERENCE_GUARD: u32 = 32;

impl PartialOrd for HalfAngle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HalfAngle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl fmt::Display for HalfAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Linear { a, b } if b.is_zero() => write!(f, "{a}"),
            Self::Linear { a, b } if a.is_zero() => write!(f, "{b}·π"),
            Self::Linear { a, b } => write!(f, "{a} + {b}·π"),
            Self::Atan { m, k: 0 } => write!(f, "atan({m})"),
            Self::Atan { m, k } => write!(f, "atan({m}) + {k}·π"),
        }
    }
}

impl fmt::Debug for HalfAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::frac(n, d)
    }

    #[test]
    fn pythagorean_special_values_are_linear() {
        assert_eq!(HalfAngle::pythagorean(q(0, 1)), HalfAngle::zero());
        assert_eq!(HalfAngle::pythagorean(q(1, 1)), HalfAngle::pi_multiple(q(1, 4)));
        assert_eq!(HalfAngle::pythagorean(q(-1, 1)), HalfAngle::pi_multiple(q(-1, 4)));
        assert!(!HalfAngle::pythagorean(q(2, 1)).is_linear());
    }

    #[test]
    fn reduction_into_half_turn() {
        let t = HalfAngle::pi_multiple(q(9, 4)).reduce();
        assert_eq!(t, HalfAngle::pi_multiple(q(1, 4)));
        let t = HalfAngle::pi_multiple(q(-1, 4)).reduce();
        assert_eq!(t, HalfAngle::pi_multiple(q(3, 4)));
        let t = HalfAngle::linear(q(3, 10), q(1, 1)).reduce();
        assert_eq!(t, HalfAngle::rational(q(3, 10)));
        let t = HalfAngle::rational(q(-1, 10)).reduce();
        assert_eq!(t, HalfAngle::linear(q(-1, 10), q(1, 1)));
        let t = HalfAngle::rational(q(7, 1)).reduce();
        assert_eq!(t, HalfAngle::linear(q(7, 1), q(-2, 1)));
        assert_eq!(HalfAngle::pythagorean(q(-2, 1)).reduce(), HalfAngle::Atan { m: q(-2, 1), k: 1 });
    }

    #[test]
    fn mixed_comparisons() {
        // atan(1/2) = 0.46364760900080611621...
        let at = HalfAngle::pythagorean(q(1, 2));
        let below = HalfAngle::rational(ExactRational::parse_decimal("0.46364760900080611").unwrap());
        let above = HalfAngle::rational(ExactRational::parse_decimal("0.46364760900080612").unwrap());
        assert_eq!(below.cmp(&at), Ordering::Less);
        assert_eq!(above.cmp(&at), Ordering::Greater);
        // 355/113 just above π
        assert_eq!(HalfAngle::rational(q(355, 113)).cmp(&HalfAngle::pi_multiple(q(1, 1))), Ordering::Greater);
        assert_eq!(HalfAngle::pythagorean(q(2, 1)).cmp(&HalfAngle::pythagorean(q(3, 1))), Ordering::Less);
    }

    #[test]
    fn circle_points() {
        let i = ExactRational::one();
        assert_eq!(HalfAngle::zero().exact_circle_point().unwrap(), Complex::i_pow(&i, 0));
        assert_eq!(HalfAngle::pi_multiple(q(1, 4)).exact_circle_point().unwrap(), Complex::i_pow(&i, 1));
        assert_eq!(HalfAngle::pi_multiple(q(-3, 4)).exact_circle_point().unwrap(), Complex::i_pow(&i, 1));
        assert_eq!(HalfAngle::pi_multiple(q(1, 2)).exact_circle_point().unwrap(), Complex::i_pow(&i, 2));
        assert!(HalfAngle::pi_multiple(q(1, 3)).exact_circle_point().is_none());
        assert!(HalfAngle::rational(q(1, 3)).exact_circle_point().is_none());
        let z = HalfAngle::pythagorean(q(2, 1)).exact_circle_point().unwrap();
        assert_eq!(z, Complex::new(q(-3, 5), q(4, 5)));
    }

    #[test]
    fn circle_point_matches_evaluation() {
        for m in [q(2, 1), q(-1, 3), q(7, 5)] {
            let t = HalfAngle::pythagorean(m);
            let z = t.exact_circle_point().unwrap();
            let two_t = t.evaluate::<BigFloat>(100).mul_pow2(1);
            let (s, c) = two_t.sin_cos();
            assert!((c.to_f64() - z.re.to_f64()).abs() < 1e-15);
            assert!((s.to_f64() - z.im.to_f64()).abs() < 1e-15);
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(HalfAngle::pi_multiple(q(1, 4)).to_string(), "1/4·π");
        assert_eq!(HalfAngle::Atan { m: q(-2, 1), k: 1 }.to_string(), "atan(-2) + 1·π");
    }

    fn angle() -> impl Strategy<Value = HalfAngle> {
        prop_oneof![
            (-400i64..400, 1i64..50).prop_map(|(n, d)| HalfAngle::rational(q(n, d))),
            (-20i64..20, 1i64..12).prop_map(|(n, d)| HalfAngle::pi_multiple(q(n, d))),
            (-40i64..40, 1i64..20, -2i64..3).prop_map(|(n, d, k)| HalfAngle::pythagorean(q(n, d)).shift_pi(k)),
        ]
    }

    proptest! {
        #[test]
        fn reduce_lands_in_half_turn_and_preserves_class(t in angle()) {
            let r = t.reduce();
            prop_assert!(r >= HalfAngle::zero());
            prop_assert!(r < HalfAngle::pi_multiple(q(1, 1)));
            let diff = t.difference::<BigFloat>(&r, 128).to_f64() / std::f64::consts::PI;
            prop_assert!((diff - diff.round()).abs() < 1e-12);
        }

        #[test]
        fn ordering_agrees_with_numeric_value(s in angle(), t in angle()) {
            let (x, y) = (s.evaluate::<BigFloat>(200), t.evaluate::<BigFloat>(200));
            match s.cmp(&t) {
                Ordering::Less => prop_assert!(x < y),
                Ordering::Greater => prop_assert!(x > y),
                Ordering::Equal => prop_assert_eq!(&s, &t),
            }
        }
    }
}
