use std::fmt;

use crate::arithmetic::{
    classify, escalate_precision, Backend, BigFloat, ExactRational, GaussianRational, IntervalValue, NumericContext,
    Real, ResidualSample, Round, TraceStep, Verdict,
};
use crate::geometry::{CircleConfig, CollinearConfig};

use super::{
    alternating_reciprocal_sum, collinear_alternating_sum, collinear_residual_at, exact_jane_rhs, AlternatingSum,
    IdentityError,
};

/// Sign convention of every reported residual: odd-labelled sum minus even-labelled sum.
pub const RESIDUAL_CONVENTION: &str = "odd-minus-even";

/// Precision used for condition diagnostics on exact paths.
const DIAGNOSTIC_PRECISION: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Configuration {
    Circle(CircleConfig),
    Line(CollinearConfig),
}

impl Configuration {
    pub fn len(&self) -> usize {
        match self {
            Configuration::Circle(c) => c.len(),
            Configuration::Line(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl From<CircleConfig> for Configuration {
    fn from(c: CircleConfig) -> Self {
        Configuration::Circle(c)
    }
}

impl From<CollinearConfig> for Configuration {
    fn from(c: CollinearConfig) -> Self {
        Configuration::Line(c)
    }
}

/// Which evaluation produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EvaluationPath {
    /// Even count on a circle, float or interval backend.
    Mcdougall,
    /// Odd count on a circle: the alternating sum is expected not to vanish.
    OddCircleControl,
    /// Even count of rational circle points, Gaussian-rational backend.
    ExactJane,
    /// Rational points on a line, exact backend.
    ExactCollinear,
    /// Points on a line, float or interval backend.
    Collinear,
}

impl EvaluationPath {
    pub fn name(self) -> &'static str {
        match self {
            EvaluationPath::Mcdougall => "mcdougall",
            EvaluationPath::OddCircleControl => "odd-circle-control",
            EvaluationPath::ExactJane => "exact-jane",
            EvaluationPath::ExactCollinear => "exact-collinear",
            EvaluationPath::Collinear => "collinear",
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, EvaluationPath::ExactJane | EvaluationPath::ExactCollinear)
    }
}

impl fmt::Display for EvaluationPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A scalar in whichever backend produced it.
#[derive(Clone, Debug, PartialEq)]
pub enum ReportValue {
    Rational(ExactRational),
    Gaussian(GaussianRational),
    Float(BigFloat),
    Interval(IntervalValue),
}

impl ReportValue {
    pub fn is_zero(&self) -> bool {
        match self {
            ReportValue::Rational(q) => q.is_zero(),
            ReportValue::Gaussian(z) => z.re.is_zero() && z.im.is_zero(),
            ReportValue::Float(x) => x.is_zero(),
            ReportValue::Interval(i) => i.lo().is_zero() && i.hi().is_zero(),
        }
    }
}

impl fmt::Display for ReportValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportValue::Rational(q) => write!(f, "{q}"),
            ReportValue::Gaussian(z) => write!(f, "{} + {}i", z.re, z.im),
            ReportValue::Float(x) => write!(f, "{x}"),
            ReportValue::Interval(i) => write!(f, "[{}, {}]", i.lo(), i.hi()),
        }
    }
}

/// Backends whose values can be placed in a report.
pub trait Reportable: Real {
    fn report_value(&self) -> ReportValue;
}

impl Reportable for BigFloat {
    fn report_value(&self) -> ReportValue {
        ReportValue::Float(self.clone())
    }
}

impl Reportable for IntervalValue {
    fn report_value(&self) -> ReportValue {
        ReportValue::Interval(self.clone())
    }
}

/// Conditioning diagnostics, evaluated at the first precision of the schedule.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Condition {
    pub min_gap: Option<BigFloat>,
    pub min_chord: Option<BigFloat>,
    pub max_reciprocal: Option<BigFloat>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub backend: Backend,
    pub path: EvaluationPath,
    pub convention: &'static str,
    pub verdict: Verdict,
    /// Final residual; absent when the input was rejected as degenerate.
    pub residual: Option<ReportValue>,
    /// `|residual| / Σ 1/R_i`; absent when that sum is not available exactly.
    pub relative_residual: Option<ReportValue>,
    /// Last precision evaluated; absent on exact paths.
    pub precision_bits: Option<u32>,
    /// Escalation steps; empty on exact paths.
    pub trace: Vec<TraceStep>,
    pub condition: Condition,
    pub warnings: Vec<String>,
}

impl ResidualReport {
    /// The verdict implied by the stored evidence alone.
    pub fn recomputed_verdict(&self) -> Verdict {
        match &self.residual {
            None => Verdict::Degenerate,
            Some(r) if self.path.is_exact() => {
                if r.is_zero() {
                    Verdict::IdentityConsistent
                } else {
                    Verdict::Violated
                }
            }
            Some(_) => classify(&self.trace),
        }
    }

    fn new(backend: Backend, path: EvaluationPath) -> Self {
        Self {
            backend,
            path,
            convention: RESIDUAL_CONVENTION,
            verdict: Verdict::Degenerate,
            residual: None,
            relative_residual: None,
            precision_bits: None,
            trace: Vec::new(),
            condition: Condition::default(),
            warnings: Vec::new(),
        }
    }
}

/// Evaluates the identity that applies to `config` under `ctx` and reports the verdict.
///
/// Inputs that are too degenerate to evaluate produce a report with verdict
/// [`Verdict::Degenerate`]. The only error is a backend that cannot
/// represent the configuration.
pub fn verify_identity(config: &Configuration, ctx: &NumericContext) -> Result<ResidualReport, IdentityError> {
    let backend = ctx.backend();
    let unsupported = |reason: &str| IdentityError::UnsupportedBackend { backend, reason: reason.to_string() };
    match (config, backend) {
        (Configuration::Line(line), Backend::ExactRational | Backend::GaussianRational) => {
            Ok(verify_line_exact(line, backend))
        }
        (Configuration::Line(line), Backend::BigFloat) => Ok(verify_line_float::<BigFloat>(line, ctx)),
        (Configuration::Line(line), Backend::Interval) => Ok(verify_line_float::<IntervalValue>(line, ctx)),
        (Configuration::Circle(_), Backend::ExactRational) => {
            Err(unsupported("circle points need the gaussian, bigfloat or interval backend"))
        }
        (Configuration::Circle(circle), Backend::GaussianRational) => {
            if circle.len() % 2 == 1 {
                return Err(unsupported("odd counts on a circle need the bigfloat or interval backend"));
            }
            let z = circle
                .exact_circle_points()
                .ok_or_else(|| unsupported("every half-angle must be atan of a rational or a multiple of π/4"))?;
            Ok(verify_circle_exact(circle, &z))
        }
        (Configuration::Circle(circle), Backend::BigFloat) => Ok(verify_circle_float::<BigFloat>(circle, ctx)),
        (Configuration::Circle(circle), Backend::Interval) => Ok(verify_circle_float::<IntervalValue>(circle, ctx)),
    }
}

fn exact_verdict(zero: bool) -> Verdict {
    if zero {
        Verdict::IdentityConsistent
    } else {
        Verdict::Violated
    }
}

fn line_condition(line: &CollinearConfig) -> Condition {
    let gap = BigFloat::from_rational(&line.min_gap(), DIAGNOSTIC_PRECISION, Round::Nearest);
    let max_reciprocal = max_line_reciprocal(line);
    Condition {
        min_gap: Some(gap.clone()),
        min_chord: Some(gap),
        max_reciprocal: Some(BigFloat::from_rational(&max_reciprocal, DIAGNOSTIC_PRECISION, Round::Nearest)),
    }
}

fn max_line_reciprocal(line: &CollinearConfig) -> ExactRational {
    let xs = line.positions();
    xs.iter()
        .enumerate()
        .map(|(i, xi)| {
            let mut r = ExactRational::one();
            for (j, xj) in xs.iter().enumerate() {
                if j != i {
                    r = &r * &(xj - xi).abs();
                }
            }
            r.recip().expect("distinct positions")
        })
        .max()
        .expect("at least two points")
}

fn verify_line_exact(line: &CollinearConfig, backend: Backend) -> ResidualReport {
    let AlternatingSum { value, scale } = collinear_alternating_sum(line.positions());
    let relative = value.abs().checked_div(&scale).expect("scale is positive");
    let mut report = ResidualReport::new(backend, EvaluationPath::ExactCollinear);
    report.verdict = exact_verdict(value.is_zero());
    report.residual = Some(ReportValue::Rational(value));
    report.relative_residual = Some(ReportValue::Rational(relative));
    report.condition = line_condition(line);
    report
}

fn verify_line_float<R: Reportable>(line: &CollinearConfig, ctx: &NumericContext) -> ResidualReport {
    let mut report = ResidualReport::new(ctx.backend(), EvaluationPath::Collinear);
    report.condition = line_condition(line);
    let mut last: Option<R> = None;
    let outcome = escalate_precision(
        |p| {
            let s = collinear_residual_at::<R>(line, p);
            let sample = ResidualSample { residual: s.value.estimate(), scale: s.scale.estimate() };
            last = Some(s.value);
            Ok::<_, IdentityError>(sample)
        },
        ctx,
    );
    let esc = outcome.expect("collinear evaluation cannot fail");
    finish_float(&mut report, esc.verdict, esc.trace, last);
    report
}

fn finish_float<R: Reportable>(report: &mut ResidualReport, verdict: Verdict, trace: Vec<TraceStep>, last: Option<R>) {
    let step = trace.last().expect("escalation trace is never empty");
    report.precision_bits = Some(step.precision);
    report.relative_residual = Some(ReportValue::Float(step.relative_residual()));
    report.residual = last.map(|r| r.report_value());
    report.verdict = verdict;
    report.trace = trace;
}

fn circle_condition<R: Real>(circle: &CircleConfig, prec: u32) -> Condition {
    let eval = circle.evaluate::<R>(prec);
    let mut condition = Condition { min_gap: Some(eval.min_gap().estimate()), ..Condition::default() };
    if let Ok(products) = eval.chord_products() {
        condition.min_chord = Some(products.min_chord.estimate());
        condition.max_reciprocal = Some(products.max_reciprocal().estimate());
    }
    condition
}

fn verify_circle_exact(circle: &CircleConfig, z: &[GaussianRational]) -> ResidualReport {
    let value = exact_jane_rhs(z, circle.len() / 2).expect("normalized points have distinct squares");
    let mut report = ResidualReport::new(Backend::GaussianRational, EvaluationPath::ExactJane);
    report.verdict = exact_verdict(value.re.is_zero() && value.im.is_zero());
    report.residual = Some(ReportValue::Gaussian(value));
    report.condition = circle_condition::<BigFloat>(circle, DIAGNOSTIC_PRECISION);
    report
}

fn verify_circle_float<R: Reportable>(circle: &CircleConfig, ctx: &NumericContext) -> ResidualReport {
    let n = circle.len();
    let path = if n % 2 == 1 { EvaluationPath::OddCircleControl } else { EvaluationPath::Mcdougall };
    let mut report = ResidualReport::new(ctx.backend(), path);
    if n < 2 {
        report.warnings.push(format!("{n} point(s): no chords to evaluate"));
        return report;
    }
    let p0 = ctx.precision_bits();
    report.condition = circle_condition::<R>(circle, p0);
    let gap_log2 = report.condition.min_gap.as_ref().map_or(f64::NEG_INFINITY, BigFloat::log2_abs);
    let p0f = f64::from(p0);
    if gap_log2 < -p0f / 2.0 {
        report.warnings.push(format!(
            "minimum half-angle gap 2^{gap_log2:.1} is below 2^-{} at {p0} bits",
            p0 / 2
        ));
        return report;
    }
    if gap_log2 < -p0f / 4.0 {
        report.warnings.push(format!(
            "ill-conditioned: minimum half-angle gap 2^{gap_log2:.1} is below 2^-{} at {p0} bits",
            p0 / 4
        ));
    }
    let mut last: Option<R> = None;
    let outcome = escalate_precision(
        |p| {
            let products = circle.evaluate::<R>(p).chord_products()?;
            let s = alternating_reciprocal_sum(&products);
            let sample = ResidualSample { residual: s.value.estimate(), scale: s.scale.estimate() };
            last = Some(s.value);
            Ok::<_, IdentityError>(sample)
        },
        ctx,
    );
    match outcome {
        Ok(esc) => finish_float(&mut report, esc.verdict, esc.trace, last),
        Err(e) => report.warnings.push(e.to_string()),
    }
    report
}
