//! Report files: the outcome of one verification as JSON.
//!
//! Every number is stored exactly. Floats become the rational they represent
//! together with their precision, so the escalation trace can be read back
//! and classified again.

use chordkit_core::arithmetic::{classify, BigFloat, Round, TraceStep};
use chordkit_core::identities::{Condition, EvaluationPath, ReportValue};
use chordkit_core::{ExactRational, ResidualReport, Verdict};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl RationalJson {
    pub fn new(q: &ExactRational) -> Self {
        Self { num: q.numer().to_string(), den: q.denom().to_string() }
    }

    pub fn value(&self) -> Result<ExactRational, CliError> {
        let bad = || CliError::Field { field: "report".into(), message: format!("bad rational {}/{}", self.num, self.den) };
        let n: BigInt = self.num.parse().map_err(|_| bad())?;
        let d: BigInt = self.den.parse().map_err(|_| bad())?;
        ExactRational::new(n, d).map_err(|_| bad())
    }
}

/// A binary float: its exact value, its precision, and a decimal rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloatJson {
    pub num: String,
    pub den: String,
    pub bits: u32,
    pub approx: String,
}

impl FloatJson {
    pub fn new(x: &BigFloat) -> Self {
        let q = x.to_rational();
        Self { num: q.numer().to_string(), den: q.denom().to_string(), bits: x.precision(), approx: x.to_scientific() }
    }

    pub fn value(&self) -> Result<BigFloat, CliError> {
        let q = RationalJson { num: self.num.clone(), den: self.den.clone() }.value()?;
        let x = BigFloat::from_rational(&q, self.bits, Round::Nearest);
        if x.to_rational() != q {
            return Err(CliError::Field {
                field: "report".into(),
                message: format!("{}/{} is not a {}-bit float", self.num, self.den, self.bits),
            });
        }
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ValueJson {
    Rational { num: String, den: String },
    Gaussian { re: RationalJson, im: RationalJson },
    Float(FloatJson),
    Interval { lo: FloatJson, hi: FloatJson },
}

impl ValueJson {
    pub fn new(v: &ReportValue) -> Self {
        match v {
            ReportValue::Rational(q) => ValueJson::Rational { num: q.numer().to_string(), den: q.denom().to_string() },
            ReportValue::Gaussian(z) => ValueJson::Gaussian { re: RationalJson::new(&z.re), im: RationalJson::new(&z.im) },
            ReportValue::Float(x) => ValueJson::Float(FloatJson::new(x)),
            ReportValue::Interval(i) => ValueJson::Interval { lo: FloatJson::new(i.lo()), hi: FloatJson::new(i.hi()) },
        }
    }

    pub fn is_zero(&self) -> bool {
        let zero = |num: &str| num == "0";
        match self {
            ValueJson::Rational { num, .. } => zero(num),
            ValueJson::Gaussian { re, im } => zero(&re.num) && zero(&im.num),
            ValueJson::Float(x) => zero(&x.num),
            ValueJson::Interval { lo, hi } => zero(&lo.num) && zero(&hi.num),
        }
    }

    /// Short human-readable form.
    pub fn display(&self) -> String {
        let frac = |num: &str, den: &str| if den == "1" { num.to_string() } else { format!("{num}/{den}") };
        match self {
            ValueJson::Rational { num, den } => frac(num, den),
            ValueJson::Gaussian { re, im } => format!("{} + {}i", frac(&re.num, &re.den), frac(&im.num, &im.den)),
            ValueJson::Float(x) => x.approx.clone(),
            ValueJson::Interval { lo, hi } => format!("[{}, {}]", lo.approx, hi.approx),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub precision: u32,
    pub residual: FloatJson,
    pub scale: FloatJson,
    pub relative_residual: FloatJson,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionJson {
    pub min_gap: Option<FloatJson>,
    pub min_chord: Option<FloatJson>,
    pub max_reciprocal: Option<FloatJson>,
}

impl ConditionJson {
    pub fn new(c: &Condition) -> Self {
        Self {
            min_gap: c.min_gap.as_ref().map(FloatJson::new),
            min_chord: c.min_chord.as_ref().map(FloatJson::new),
            max_reciprocal: c.max_reciprocal.as_ref().map(FloatJson::new),
        }
    }
}

/// Wall-clock milliseconds. Not covered by any determinism guarantee.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub parse_ms: f64,
    pub verify_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub instance_digest: String,
    pub backend: String,
    /// Evaluation path; absent when the instance was rejected before evaluation.
    pub path: Option<String>,
    pub convention: String,
    pub verdict: String,
    pub residual: Option<ValueJson>,
    pub relative_residual: Option<ValueJson>,
    pub precision_bits: Option<u32>,
    pub trace: Vec<TraceJson>,
    pub condition: ConditionJson,
    pub warnings: Vec<String>,
    pub timings: Timings,
}

impl ReportFile {
    pub fn from_report(digest: String, report: &ResidualReport, timings: Timings) -> Self {
        Self {
            instance_digest: digest,
            backend: report.backend.name().to_string(),
            path: Some(report.path.name().to_string()),
            convention: report.convention.to_string(),
            verdict: report.verdict.name().to_string(),
            residual: report.residual.as_ref().map(ValueJson::new),
            relative_residual: report.relative_residual.as_ref().map(ValueJson::new),
            precision_bits: report.precision_bits,
            trace: report
                .trace
                .iter()
                .map(|s| TraceJson {
                    precision: s.precision,
                    residual: FloatJson::new(&s.residual),
                    scale: FloatJson::new(&s.scale),
                    relative_residual: FloatJson::new(&s.relative_residual()),
                })
                .collect(),
            condition: ConditionJson::new(&report.condition),
            warnings: report.warnings.clone(),
            timings,
        }
    }

    /// Report for an instance rejected as degenerate before any evaluation.
    pub fn rejected(digest: String, backend: &str, reason: String, timings: Timings) -> Self {
        Self {
            instance_digest: digest,
            backend: backend.to_string(),
            path: None,
            convention: chordkit_core::identities::RESIDUAL_CONVENTION.to_string(),
            verdict: Verdict::Degenerate.name().to_string(),
            residual: None,
            relative_residual: None,
            precision_bits: None,
            trace: Vec::new(),
            condition: ConditionJson::default(),
            warnings: vec![reason],
            timings,
        }
    }

    pub fn verdict(&self) -> Result<Verdict, CliError> {
        self.verdict.parse().map_err(|m| CliError::Field { field: "verdict".into(), message: m })
    }

    /// The verdict implied by the serialized residual and trace alone.
    pub fn recomputed_verdict(&self) -> Result<Verdict, CliError> {
        let Some(residual) = &self.residual else {
            return Ok(Verdict::Degenerate);
        };
        let exact = [EvaluationPath::ExactJane, EvaluationPath::ExactCollinear]
            .iter()
            .any(|p| self.path.as_deref() == Some(p.name()));
        if exact {
            return Ok(if residual.is_zero() { Verdict::IdentityConsistent } else { Verdict::Violated });
        }
        let trace = self
            .trace
            .iter()
            .map(|t| Ok(TraceStep { precision: t.precision, residual: t.residual.value()?, scale: t.scale.value()? }))
            .collect::<Result<Vec<_>, CliError>>()?;
        if trace.is_empty() {
            return Err(CliError::Field { field: "trace".into(), message: "empty trace on a float path".into() });
        }
        Ok(classify(&trace))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
    }
}
