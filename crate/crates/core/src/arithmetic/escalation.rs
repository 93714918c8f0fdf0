//! Re-evaluating a residual at increasing precision and classifying the trend.
//!
//! A true identity leaves only rounding error, which shrinks like `2^-p`.
//! A false one leaves a residual that stays put as `p` grows. The decision
//! rule works on `log2(|residual| / scale)`:
//!
//! * any residual that is exactly zero: identity-consistent;
//! * one sample: identity-consistent iff the relative residual is at most `2^(-p/2)`;
//! * several samples: identity-consistent iff the least-squares slope of
//!   `log2` relative residual against `p` is at most `-1/2` per bit;
//! * otherwise violated.

use std::fmt;
use std::str::FromStr;

use super::{BigFloat, NumericContext, Round};

/// Slope (bits of residual per bit of precision) separating decay from a plateau.
pub const SLOPE_THRESHOLD: f64 = -0.5;
/// Early exit once the residual is this many bits above rounding level.
const ROUNDING_SLACK_BITS: f64 = 8.0;
/// A residual that stays above `2^-32 · scale` for three steps has stabilized.
const PLATEAU_FLOOR_LOG2: f64 = -32.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    IdentityConsistent,
    Violated,
    Degenerate,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::IdentityConsistent => "identity-consistent",
            Verdict::Violated => "violated",
            Verdict::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Verdict {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "identity-consistent" => Ok(Verdict::IdentityConsistent),
            "violated" => Ok(Verdict::Violated),
            "degenerate" => Ok(Verdict::Degenerate),
            other => Err(format!("unknown verdict {other:?}")),
        }
    }
}

/// What an evaluator returns at one precision.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualSample {
    pub residual: BigFloat,
    /// Positive normalizer for the relative residual (sum of term magnitudes).
    pub scale: BigFloat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub precision: u32,
    pub residual: BigFloat,
    pub scale: BigFloat,
}

impl TraceStep {
    /// `|residual| / scale`, or `|residual|` when the scale is zero.
    pub fn relative_residual(&self) -> BigFloat {
        let r = self.residual.abs();
        if self.scale.is_zero() {
            return r;
        }
        r.div_round(&self.scale.abs(), self.residual.precision().max(64), Round::Up).unwrap()
    }

    pub fn log2_relative(&self) -> f64 {
        if self.scale.is_zero() {
            self.residual.log2_abs()
        } else {
            self.residual.log2_abs() - self.scale.log2_abs()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Escalation {
    pub trace: Vec<TraceStep>,
    pub verdict: Verdict,
}

impl Escalation {
    pub fn last(&self) -> &TraceStep {
        self.trace.last().expect("escalation trace is never empty")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EscalationError<E> {
    pub precision: u32,
    pub source: E,
}

impl<E: fmt::Display> fmt::Display for EscalationError<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "evaluation failed at {} bits: {}", self.precision, self.source)
    }
}

impl<E: std::error::Error + 'static> std::error::Error for EscalationError<E> {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.source)
    }
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Applies the decision rule to a trace.
pub fn classify(trace: &[TraceStep]) -> Verdict {
    if trace.is_empty() {
        return Verdict::Violated;
    }
    if trace.iter().any(|s| s.residual.is_zero()) {
        return Verdict::IdentityConsistent;
    }
    let points: Vec<(f64, f64)> = trace.iter().map(|s| (f64::from(s.precision), s.log2_relative())).collect();
    let consistent = if let [(p, l)] = points[..] {
        l <= -p / 2.0
    } else {
        slope(&points) <= SLOPE_THRESHOLD
    };
    if consistent {
        Verdict::IdentityConsistent
    } else {
        Verdict::Violated
    }
}

fn should_stop(trace: &[TraceStep]) -> bool {
    let last = trace.last().unwrap();
    if last.residual.is_zero() {
        return true;
    }
    if trace.len() >= 2
        && classify(trace) == Verdict::IdentityConsistent
        && last.log2_relative() <= -f64::from(last.precision) + ROUNDING_SLACK_BITS
    {
        return true;
    }
    if trace.len() >= 3 {
        let tail: Vec<f64> = trace[trace.len() - 3..].iter().map(TraceStep::log2_relative).collect();
        let lo = tail.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if lo > PLATEAU_FLOOR_LOG2 && hi - lo <= 1.0 {
            return true;
        }
    }
    false
}

/// Runs `evaluator` along the context's schedule and classifies the result.
pub fn escalate_precision<E, F>(mut evaluator: F, ctx: &NumericContext) -> Result<Escalation, EscalationError<E>>
where
    F: FnMut(u32) -> Result<ResidualSample, E>,
{
    let mut trace = Vec::with_capacity(ctx.schedule().len());
    for &precision in ctx.schedule() {
        let sample = evaluator(precision).map_err(|source| EscalationError { precision, source })?;
        trace.push(TraceStep { precision, residual: sample.residual, scale: sample.scale });
        if should_stop(&trace) {
            break;
        }
    }
    let verdict = classify(&trace);
    Ok(Escalation { trace, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::Backend;
    use proptest::prelude::*;
    use std::convert::Infallible;

    fn sample(residual: BigFloat) -> ResidualSample {
        let p = residual.precision();
        ResidualSample { residual, scale: BigFloat::one(p) }
    }

    #[test]
    fn exact_zero_stops_after_first_step() {
        let ctx = NumericContext::default();
        let out = escalate_precision(|p| Ok::<_, Infallible>(sample(BigFloat::zero(p))), &ctx).unwrap();
        assert_eq!(out.trace.len(), 1);
        assert_eq!(out.verdict, Verdict::IdentityConsistent);
    }

    #[test]
    fn constant_residual_is_violated() {
        let ctx = NumericContext::default();
        let out = escalate_precision(|p| Ok::<_, Infallible>(sample(BigFloat::from_f64(0.25, p))), &ctx).unwrap();
        assert_eq!(out.verdict, Verdict::Violated);
        // plateau detected after three steps
        assert_eq!(out.trace.len(), 3);
    }

    #[test]
    fn rounding_level_residual_is_consistent() {
        let ctx = NumericContext::default();
        let out = escalate_precision(|p| Ok::<_, Infallible>(sample(BigFloat::from_f64(3.0, p).mul_pow2(-i64::from(p)))), &ctx)
            .unwrap();
        assert_eq!(out.verdict, Verdict::IdentityConsistent);
        assert_eq!(out.trace.len(), 2);
    }

    #[test]
    fn slow_decay_is_not_an_identity() {
        // residual ~ 2^(-p/4): decays, but far slower than rounding error
        let ctx = NumericContext::default();
        let out = escalate_precision(|p| Ok::<_, Infallible>(sample(BigFloat::one(p).mul_pow2(-i64::from(p) / 4))), &ctx).unwrap();
        assert_eq!(out.verdict, Verdict::Violated);
    }

    #[test]
    fn errors_carry_precision() {
        let ctx = NumericContext::default();
        let err = escalate_precision(
            |p| if p >= 256 { Err("boom") } else { Ok(sample(BigFloat::from_f64(0.5, p))) },
            &ctx,
        )
        .unwrap_err();
        assert_eq!(err.precision, 256);
        assert_eq!(err.to_string(), "evaluation failed at 256 bits: boom");
    }

    #[test]
    fn single_sample_rule() {
        let at = |p: u32, log2: i64| TraceStep { precision: p, residual: BigFloat::one(p).mul_pow2(log2), scale: BigFloat::one(p) };
        assert_eq!(classify(&[at(64, -40)]), Verdict::IdentityConsistent);
        assert_eq!(classify(&[at(64, -20)]), Verdict::Violated);
        assert_eq!(classify(&[]), Verdict::Violated);
    }

    #[test]
    fn verdict_names_round_trip() {
        for v in [Verdict::IdentityConsistent, Verdict::Violated, Verdict::Degenerate] {
            assert_eq!(v.name().parse::<Verdict>().unwrap(), v);
        }
    }

    proptest! {
        // Once a decaying residual is classified consistent on a prefix,
        // longer prefixes of the same schedule stay consistent.
        #[test]
        fn verdict_monotone_under_extension(rate in 0.6f64..2.0, offset in -20i64..20, jitter in proptest::collection::vec(-3i64..=3, 7)) {
            let ctx = NumericContext::escalating(Backend::BigFloat, 64).unwrap();
            let steps: Vec<TraceStep> = ctx.schedule().iter().zip(&jitter).map(|(&p, &j)| {
                let e = -(rate * f64::from(p)).round() as i64 + offset + j;
                TraceStep { precision: p, residual: BigFloat::one(p).mul_pow2(e), scale: BigFloat::one(p) }
            }).collect();
            let mut seen_consistent = false;
            for k in 2..=steps.len() {
                let v = classify(&steps[..k]);
                if seen_consistent {
                    prop_assert_eq!(v, Verdict::IdentityConsistent);
                }
                seen_consistent |= v == Verdict::IdentityConsistent;
            }
            prop_assert!(seen_consistent);
        }
    }
}
