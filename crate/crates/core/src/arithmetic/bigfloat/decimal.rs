use std::cmp::Ordering;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use super::{BigFloat, Round};
use crate::arithmetic::{ArithmeticError, ExactRational};

/// Significant decimal digits that round-trip a `prec`-bit value.
pub(crate) fn round_trip_digits(prec: u32) -> u32 {
    // ceil(prec · log10 2) + 1
    (u64::from(prec) * 30_103).div_ceil(100_000) as u32 + 1
}

fn pow10(n: u64) -> BigUint {
    num_traits::pow(BigUint::from(10u32), n as usize)
}

impl BigFloat {
    /// Scientific notation carrying every significant digit needed to recover
    /// the exact value at this precision, e.g. `-1.2500000000e-3`.
    pub fn to_scientific(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = round_trip_digits(self.precision());
        let (mant, exp) = (self.mantissa(), self.exponent());
        let mut e10 = (self.log2_abs() * std::f64::consts::LOG10_2).floor() as i64;
        let lower = pow10(u64::from(digits) - 1);
        let upper = pow10(u64::from(digits));
        let scaled = loop {
            // |x| · 10^(digits - 1 - e10), rounded half-even
            let k = i64::from(digits) - 1 - e10;
            let mut num = mant.clone();
            let mut den = BigUint::one();
            if exp >= 0 {
                num <<= exp as u64;
            } else {
                den <<= (-exp) as u64;
            }
            if k >= 0 {
                num *= pow10(k as u64);
            } else {
                den *= pow10((-k) as u64);
            }
            let (q, r) = num.div_rem(&den);
            let twice = r << 1u32;
            let q = match twice.cmp(&den) {
                Ordering::Less => q,
                Ordering::Greater => q + 1u32,
                Ordering::Equal => {
                    if q.is_odd() {
                        q + 1u32
                    } else {
                        q
                    }
                }
            };
            if q >= upper {
                e10 += 1;
            } else if q < lower {
                e10 -= 1;
            } else {
                break q;
            }
        };
        let s = scaled.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        if s.len() == 1 {
            format!("{sign}{s}e{e10}")
        } else {
            format!("{sign}{}.{}e{e10}", &s[..1], &s[1..])
        }
    }

    /// Parses a decimal literal and rounds it to `prec` bits.
    pub fn parse_decimal(s: &str, prec: u32) -> Result<BigFloat, ArithmeticError> {
        let q = ExactRational::parse_decimal(s)?;
        Ok(BigFloat::from_rational(&q, prec, Round::Nearest))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn digits_for_common_precisions() {
        assert_eq!(round_trip_digits(53), 17);
        assert_eq!(round_trip_digits(24), 9);
        assert_eq!(round_trip_digits(113), 36);
    }

    #[test]
    fn formatting() {
        assert_eq!(BigFloat::from_f64(-0.125, 24).to_scientific(), "-1.25000000e-1");
        assert_eq!(BigFloat::from_i64(1000, 53).to_scientific(), "1.0000000000000000e3");
        assert_eq!(BigFloat::zero(64).to_scientific(), "0");
    }

    proptest! {
        #[test]
        fn decimal_round_trip(n in any::<i64>(), shift in -400i64..400, prec in 24u32..300) {
            let x = BigFloat::from_i64(n, prec).mul_pow2(shift);
            let text = x.to_scientific();
            let back = BigFloat::parse_decimal(&text, prec).unwrap();
            prop_assert_eq!(back.to_rational(), x.to_rational());
        }
    }
}
