use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{BigFloat, ExactRational, Real, Scalar};

/// `re + im·i` over any [`Scalar`] backend.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Complex<T> {
    pub re: T,
    pub im: T,
}

/// Complex numbers with exact rational parts. Every field operation is exact.
pub type GaussianRational = Complex<ExactRational>;

pub type ComplexFloat = Complex<BigFloat>;

impl<T: Scalar> Complex<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: T) -> Self {
        let im = re.zero_like();
        Self { re, im }
    }

    /// The imaginary unit, at the precision of `like`.
    pub fn i_like(like: &T) -> Self {
        Self { re: like.zero_like(), im: like.one_like() }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> T {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn scale(&self, k: &T) -> Self {
        Self { re: self.re.clone() * k.clone(), im: self.im.clone() * k.clone() }
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(like: &T, k: i64) -> Self {
        let (zero, one) = (like.zero_like(), like.one_like());
        match k.rem_euclid(4) {
            0 => Self::new(one, zero),
            1 => Self::new(zero, one),
            2 => Self::new(-one, zero),
            _ => Self::new(zero, -one),
        }
    }
}

impl<T: Real> Complex<T> {
    /// `cos t + i sin t`.
    pub fn cis(t: &T) -> Self {
        let (s, c) = t.sin_cos();
        Self { re: c, im: s }
    }

    /// Modulus `sqrt(re² + im²)`.
    pub fn modulus(&self) -> T {
        self.norm_sqr().sqrt().expect("norm is nonnegative")
    }
}

impl GaussianRational {
    pub fn from_rationals(re: ExactRational, im: ExactRational) -> Self {
        Self { re, im }
    }
}

impl<T: Scalar> Add for Complex<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<T: Scalar> Sub for Complex<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<T: Scalar> Mul for Complex<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        Self { re, im }
    }
}

impl<T: Scalar> Neg for Complex<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl<T: Scalar> Scalar for Complex<T> {
    fn zero_like(&self) -> Self {
        Self { re: self.re.zero_like(), im: self.re.zero_like() }
    }
    fn one_like(&self) -> Self {
        Self { re: self.re.one_like(), im: self.re.zero_like() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        let den = rhs.norm_sqr();
        let num = self.clone() * rhs.conj();
        Some(Self { re: num.re.checked_div(&den)?, im: num.im.checked_div(&den)? })
    }
    fn embed_rational(&self, q: &ExactRational) -> Self {
        Self { re: self.re.embed_rational(q), im: self.re.zero_like() }
    }
}

impl<T: fmt::Debug> fmt::Debug for Complex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl<T: fmt::Display> fmt::Display for Complex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

/// The point `((1 - m²) + 2m·i) / (1 + m²)` on the unit circle.
///
/// This is `u²` for `u = (1 + m·i)/|1 + m·i|`, i.e. the circle point with
/// half-angle `atan m`, and it has modulus exactly 1.
pub fn rational_circle_point(m: &ExactRational) -> GaussianRational {
    let one = ExactRational::one();
    let m2 = m * m;
    let den = &one + &m2;
    let re = (&one - &m2).checked_div(&den).expect("1 + m² > 0");
    let im = (&ExactRational::from(2) * m).checked_div(&den).expect("1 + m² > 0");
    Complex { re, im }
}
