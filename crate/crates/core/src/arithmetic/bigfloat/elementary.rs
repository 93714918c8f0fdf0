//! Elementary functions on [`BigFloat`].
//!
//! Everything here evaluates in fixed point (`BigInt` scaled by `2^w`) with
//! enough guard bits that the final rounding is faithful. Arguments that
//! cancel badly during range reduction trigger a retry with more bits.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{BigFloat, Round};

const GUARD: u32 = 40;
const CACHED_BITS: u32 = 8192;

fn one_fixed(w: u32) -> BigInt {
    BigInt::one() << w
}

/// `x · 2^w` truncated toward zero.
fn to_fixed(x: &BigFloat, w: u64) -> BigInt {
    let shift = x.exponent() + w as i64;
    let mag = if shift >= 0 { x.mantissa() << shift as u64 } else { x.mantissa() >> (-shift) as u64 };
    if x.is_negative() {
        -BigInt::from(mag)
    } else {
        BigInt::from(mag)
    }
}

/// `x / 2^s` truncated toward zero.
fn shr_trunc(x: BigInt, s: u64) -> BigInt {
    if x.sign() == num_bigint::Sign::Minus {
        -((-x) >> s)
    } else {
        x >> s
    }
}

fn from_fixed(v: &BigInt, w: u64, prec: u32, rnd: Round) -> BigFloat {
    BigFloat::from_bigint(v, -(w as i64), prec, rnd)
}

/// `atan(1/k) · 2^w` by the alternating Gregory series.
fn atan_inv(k: u64, w: u32) -> BigInt {
    let k2 = BigInt::from(k * k);
    let mut power = one_fixed(w) / k;
    let mut sum = power.clone();
    let mut n: u64 = 1;
    loop {
        power /= &k2;
        if power.is_zero() {
            break;
        }
        let term = &power / (2 * n + 1);
        if n % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        n += 1;
    }
    sum
}

/// `atanh(1/k) · 2^w`.
fn atanh_inv(k: u64, w: u32) -> BigInt {
    let k2 = BigInt::from(k * k);
    let mut power = one_fixed(w) / k;
    let mut sum = power.clone();
    let mut n: u64 = 1;
    loop {
        power /= &k2;
        if power.is_zero() {
            break;
        }
        sum += &power / (2 * n + 1);
        n += 1;
    }
    sum
}

fn compute_pi(w: u32) -> BigInt {
    let ww = w + 24;
    let v = (atan_inv(5, ww) * 16) - (atan_inv(239, ww) * 4);
    v >> 24u32
}

fn compute_ln2(w: u32) -> BigInt {
    let ww = w + 24;
    let v = atanh_inv(26, ww) * 18 - atanh_inv(4801, ww) * 2 + atanh_inv(8749, ww) * 8;
    v >> 24u32
}

fn cached(cell: &'static OnceLock<BigInt>, compute: fn(u32) -> BigInt, w: u32) -> BigInt {
    if w <= CACHED_BITS {
        cell.get_or_init(|| compute(CACHED_BITS)) >> (CACHED_BITS - w)
    } else {
        compute(w)
    }
}

/// `π · 2^w`, error below two units in the last place.
pub(crate) fn pi_fixed(w: u32) -> BigInt {
    static PI: OnceLock<BigInt> = OnceLock::new();
    cached(&PI, compute_pi, w)
}

/// `ln 2 · 2^w`, error below two units in the last place.
pub(crate) fn ln2_fixed(w: u32) -> BigInt {
    static LN2: OnceLock<BigInt> = OnceLock::new();
    cached(&LN2, compute_ln2, w)
}

fn bits_of(v: &BigInt) -> u64 {
    v.magnitude().bits()
}

impl BigFloat {
    pub fn pi(prec: u32) -> BigFloat {
        let w = prec + GUARD;
        from_fixed(&pi_fixed(w), u64::from(w), prec, Round::Nearest)
    }

    pub fn ln2(prec: u32) -> BigFloat {
        let w = prec + GUARD;
        from_fixed(&ln2_fixed(w), u64::from(w), prec, Round::Nearest)
    }

    /// `(sin x, cos x)` at this value's precision.
    pub fn sin_cos(&self) -> (BigFloat, BigFloat) {
        let prec = self.precision();
        if self.is_zero() {
            return (BigFloat::zero(prec), BigFloat::one(prec));
        }
        let top = self.top_exponent().unwrap();
        let mut extra: u64 = 0;
        loop {
            let w = u64::from(prec) + u64::from(GUARD) + top.unsigned_abs() + 4 + extra;
            let x = to_fixed(self, w);
            let (k, r) = if top <= -1 {
                (BigInt::zero(), x)
            } else {
                let half_pi = pi_fixed(w as u32 + 2) >> 3u32;
                let two_half_pi = &half_pi << 1u32;
                let k = (&x * 2u32 + &half_pi).div_floor(&two_half_pi);
                let r = &x - &k * &half_pi;
                (k, r)
            };
            // Reduced argument must keep prec + 20 significant bits after cancellation.
            let needed = u64::from(prec) + 20 + bits_of(&k) + 1;
            let have = bits_of(&r);
            if have < needed && !r.is_zero() {
                extra += needed - have + 16;
                continue;
            }
            let (s, c) = sin_cos_fixed(&r, w);
            let v = w + 3 * SIN_HALVINGS + 8;
            let quadrant = k.mod_floor(&BigInt::from(4u32));
            let quadrant: u32 = quadrant.try_into().unwrap();
            let (s, c) = match quadrant {
                0 => (s, c),
                1 => (c, -s),
                2 => (-s, -c),
                _ => (-c, s),
            };
            return (from_fixed(&s, v, prec, Round::Nearest), from_fixed(&c, v, prec, Round::Nearest));
        }
    }

    pub fn sin(&self) -> BigFloat {
        self.sin_cos().0
    }

    pub fn cos(&self) -> BigFloat {
        self.sin_cos().1
    }

    /// Natural logarithm; `None` for zero or negative input.
    pub fn ln(&self) -> Option<BigFloat> {
        if self.is_zero() || self.is_negative() {
            return None;
        }
        let prec = self.precision();
        let m = self.mantissa();
        let b = m.bits();
        // m / 2^c in [1/sqrt2, sqrt2)
        let below = (m * m) < (BigUint::one() << (2 * b - 1));
        let c = if below { b - 1 } else { b };
        let e = self.exponent() + c as i64;
        let pow = BigInt::one() << c;
        let num = BigInt::from(m.clone()) - &pow;
        let den = BigInt::from(m.clone()) + &pow;
        let e_bits = 64 - e.unsigned_abs().leading_zeros() as u64;
        let mut extra: u64 = 0;
        loop {
            let w = u64::from(prec) + u64::from(GUARD) + e_bits + extra;
            let y = (&num << w) / &den;
            if e == 0 && !y.is_zero() {
                let needed = u64::from(prec) + 24;
                let have = bits_of(&y);
                if have < needed {
                    extra += needed - have + 16;
                    continue;
                }
            }
            let y2 = (&y * &y) >> w;
            let mut term = y.clone();
            let mut sum = y.clone();
            let mut n: u64 = 1;
            loop {
                term = shr_trunc(&term * &y2, w);
                if term.is_zero() {
                    break;
                }
                sum += &term / (2 * n + 1);
                n += 1;
            }
            let total = (sum << 1u32) + ln2_fixed(w as u32) * e;
            return Some(from_fixed(&total, w, prec, Round::Nearest));
        }
    }

    /// `e^x`. Panics when the result exponent would not fit (|x| beyond 2^40).
    pub fn exp(&self) -> BigFloat {
        let prec = self.precision();
        if self.is_zero() {
            return BigFloat::one(prec);
        }
        let top = self.top_exponent().unwrap();
        assert!(top <= 40, "exp argument out of range");
        const HALVINGS: u64 = 12;
        let w = u64::from(prec) + u64::from(GUARD) + top.max(0) as u64 + 2;
        let x = to_fixed(self, w);
        let ln2 = ln2_fixed(w as u32);
        let k = (&x * 2u32 + &ln2).div_floor(&(&ln2 << 1u32));
        let r = &x - &k * &ln2;
        let v = w + 2 * HALVINGS + 8;
        // r / 2^HALVINGS at scale v
        let r = r << (HALVINGS + 8);
        let one = BigInt::one() << v;
        let mut sum = one.clone();
        let mut term = one;
        let mut n: u64 = 1;
        loop {
            term = shr_trunc(&term * &r, v) / n;
            if term.is_zero() {
                break;
            }
            sum += &term;
            n += 1;
        }
        for _ in 0..HALVINGS {
            sum = (&sum * &sum) >> v;
        }
        let k: i64 = (&k).try_into().expect("exponent fits in i64");
        BigFloat::from_bigint(&sum, k - v as i64, prec, Round::Nearest)
    }

    /// Arctangent in `(-π/2, π/2)`.
    pub fn atan(&self) -> BigFloat {
        let prec = self.precision();
        if self.is_zero() {
            return BigFloat::zero(prec);
        }
        let w = prec + GUARD;
        let rd = |x: BigFloat| x.with_precision(w, Round::Nearest);
        let mut a = rd(self.abs());
        let one = BigFloat::one(w);
        let inverted = a > one;
        if inverted {
            a = one.div_round(&a, w, Round::Nearest).unwrap();
        }
        // atan(a) = 2 atan(a / (1 + sqrt(1 + a^2)))
        const DOUBLINGS: i64 = 4;
        for _ in 0..DOUBLINGS {
            let root = (&one + &(&a * &a)).sqrt().unwrap();
            a = a.div_round(&(&one + &root), w, Round::Nearest).unwrap();
        }
        let a2 = &a * &a;
        let mut power = a.clone();
        let mut sum = a.clone();
        let stop = sum.top_exponent().unwrap() - i64::from(w) - 4;
        let mut n: i64 = 1;
        loop {
            power = -(&power * &a2);
            let term = power.div_round(&BigFloat::from_i64(2 * n + 1, w), w, Round::Nearest).unwrap();
            if term.is_zero() || term.top_exponent().unwrap() < stop {
                break;
            }
            sum = &sum + &term;
            n += 1;
        }
        let mut result = sum.mul_pow2(DOUBLINGS);
        if inverted {
            result = &BigFloat::pi(w).mul_pow2(-1) - &result;
        }
        if self.is_negative() {
            result = -result;
        }
        result.with_precision(prec, Round::Nearest)
    }
}

const SIN_HALVINGS: u64 = 8;

/// `(sin r, cos r) · 2^v` with `v = w + 3·SIN_HALVINGS + 8`, where `r = arg / 2^w`, `|r| <= π/4`.
fn sin_cos_fixed(arg: &BigInt, w: u64) -> (BigInt, BigInt) {
    let v = w + 3 * SIN_HALVINGS + 8;
    // r / 2^SIN_HALVINGS at scale v
    let r = arg << (2 * SIN_HALVINGS + 8);
    let r2 = (&r * &r) >> v;
    let one = BigInt::one() << v;

    let mut s = r.clone();
    let mut term = r;
    let mut n: u64 = 1;
    loop {
        term = -shr_trunc(&term * &r2, v) / ((2 * n) * (2 * n + 1));
        if term.is_zero() {
            break;
        }
        s += &term;
        n += 1;
    }

    let mut c = one.clone();
    let mut term = one;
    let mut n: u64 = 1;
    loop {
        term = -shr_trunc(&term * &r2, v) / ((2 * n - 1) * (2 * n));
        if term.is_zero() {
            break;
        }
        c += &term;
        n += 1;
    }

    for _ in 0..SIN_HALVINGS {
        let s2 = (&s * &c) >> (v - 1);
        let c2 = ((&c * &c) - (&s * &s)) >> v;
        s = s2;
        c = c2;
    }
    (s, c)
}
