use super::{BigFloat, Real};

/// Guard bits carried by the accumulated logarithm.
const LOG_GUARD: u32 = 32;

/// `sign · exp(log_magnitude)`, with an explicit zero state.
///
/// The logarithm is held at the factor precision plus guard bits, so that
/// [`SignedLogValue::to_value`] returns the product to within a couple of
/// ulps at the factor precision however many factors went in.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedLogValue<R = BigFloat> {
    sign: i8,
    log_magnitude: Option<R>,
    prec: u32,
}

impl<R: Real> SignedLogValue<R> {
    pub fn zero(prec: u32) -> Self {
        Self { sign: 0, log_magnitude: None, prec }
    }

    /// Representation of a single value. Values whose sign is not certain
    /// (an interval touching zero) map to zero.
    pub fn from_value(x: &R) -> Self {
        let prec = x.precision();
        match x.signum() {
            0 => Self::zero(prec),
            s => match x.abs().reprec(prec + LOG_GUARD).ln() {
                Some(l) => Self { sign: s, log_magnitude: Some(l), prec },
                None => Self::zero(prec),
            },
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Natural log of the magnitude; `None` for zero.
    pub fn log_magnitude(&self) -> Option<&R> {
        self.log_magnitude.as_ref()
    }

    /// Precision of the represented value (the logarithm carries extra guard bits).
    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let prec = self.prec.max(rhs.prec);
        match (&self.log_magnitude, &rhs.log_magnitude) {
            (Some(a), Some(b)) => Self { sign: self.sign * rhs.sign, log_magnitude: Some(a.clone() + b.clone()), prec },
            _ => Self::zero(prec),
        }
    }

    /// `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        let l = self.log_magnitude.as_ref()?;
        Some(Self { sign: self.sign, log_magnitude: Some(-l.clone()), prec: self.prec })
    }

    /// `sign · exp(log_magnitude)` rounded to the represented precision.
    pub fn to_value(&self) -> R {
        match &self.log_magnitude {
            None => R::from_rational(&super::ExactRational::zero(), self.prec),
            Some(l) => {
                let m = l.exp().reprec(self.prec);
                if self.sign < 0 {
                    -m
                } else {
                    m
                }
            }
        }
    }
}

/// Product of `factors` accumulated as a sum of logarithms.
///
/// The result is zero if any factor is zero (or, for intervals, may be zero).
/// Panics on an empty slice.
pub fn signed_log_product<R: Real>(factors: &[R]) -> SignedLogValue<R> {
    assert!(!factors.is_empty(), "signed_log_product needs at least one factor");
    let prec = factors.iter().map(Real::precision).max().unwrap();
    let mut acc = SignedLogValue { sign: 1, log_magnitude: None, prec };
    for f in factors {
        let term = SignedLogValue::from_value(f);
        if term.is_zero() {
            return SignedLogValue::zero(prec);
        }
        acc = match acc.log_magnitude {
            None => SignedLogValue { prec, ..term },
            Some(_) => acc.mul(&term),
        };
    }
    acc
}
