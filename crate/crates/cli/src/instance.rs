//! Instance files: point configurations as JSON.

use std::collections::BTreeMap;

use chordkit_core::{normalize_circle, CollinearConfig, Configuration, ExactRational, GeometryError, HalfAngle};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Circle,
    Line,
}

impl std::str::FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "circle" => Ok(Kind::Circle),
            "line" => Ok(Kind::Line),
            other => Err(format!("unknown kind {other:?}, expected circle or line")),
        }
    }
}

/// A rational number: a decimal literal or an explicit fraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberSpec {
    Decimal(String),
    Rational { num: String, den: String },
}

impl NumberSpec {
    pub fn from_rational(q: &ExactRational) -> Self {
        NumberSpec::Rational { num: q.numer().to_string(), den: q.denom().to_string() }
    }

    pub fn to_rational(&self) -> Result<ExactRational, String> {
        match self {
            NumberSpec::Decimal(s) => ExactRational::parse_decimal(s).map_err(|e| e.to_string()),
            NumberSpec::Rational { num, den } => {
                let n: BigInt = num.trim().parse().map_err(|_| format!("invalid numerator {num:?}"))?;
                let d: BigInt = den.trim().parse().map_err(|_| format!("invalid denominator {den:?}"))?;
                ExactRational::new(n, d).map_err(|e| e.to_string())
            }
        }
    }
}

/// A half-angle `t`, the point being `(cos 2t, sin 2t)` on the unit circle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AngleSpec {
    Decimal(String),
    Rational { num: String, den: String },
    /// `(pi_num / pi_den) · π`.
    PiMultiple { pi_num: i64, pi_den: i64 },
    /// `atan m`, giving the rational point `((1-m²)/(1+m²), 2m/(1+m²))`.
    Pythagorean { m: NumberSpec },
}

impl AngleSpec {
    pub fn to_half_angle(&self) -> Result<HalfAngle, String> {
        match self {
            AngleSpec::Decimal(s) => NumberSpec::Decimal(s.clone()).to_rational().map(HalfAngle::rational),
            AngleSpec::Rational { num, den } => NumberSpec::Rational { num: num.clone(), den: den.clone() }
                .to_rational()
                .map(HalfAngle::rational),
            AngleSpec::PiMultiple { pi_num, pi_den } => {
                if *pi_den == 0 {
                    return Err("pi_den is zero".to_string());
                }
                Ok(HalfAngle::pi_multiple(ExactRational::frac(*pi_num, *pi_den)))
            }
            AngleSpec::Pythagorean { m } => m.to_rational().map(HalfAngle::pythagorean),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorInfo {
    pub distribution: String,
    pub seed: u64,
    #[serde(default)]
    pub parameters: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<NumberSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_angles: Option<Vec<AngleSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<Vec<NumberSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorInfo>,
    /// Smallest adjacent gap, approximate, for information only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_gap: Option<String>,
}

impl InstanceFile {
    pub fn circle(radius: NumberSpec, half_angles: Vec<AngleSpec>) -> Self {
        Self {
            kind: Kind::Circle,
            radius: Some(radius),
            half_angles: Some(half_angles),
            positions: None,
            generator: None,
            min_gap: None,
        }
    }

    pub fn line(positions: Vec<NumberSpec>) -> Self {
        Self { kind: Kind::Line, radius: None, half_angles: None, positions: Some(positions), generator: None, min_gap: None }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }

    /// Parses the points. Coincident points are reported as [`CliError::Degenerate`].
    pub fn to_configuration(&self) -> Result<Configuration, CliError> {
        match self.kind {
            Kind::Circle => {
                if self.positions.is_some() {
                    return Err(field("positions", "not allowed for a circle"));
                }
                let radius = match &self.radius {
                    Some(r) => r.to_rational().map_err(|m| field("radius", &m))?,
                    None => ExactRational::one(),
                };
                let specs = self.half_angles.as_ref().ok_or_else(|| field("half_angles", "missing"))?;
                let angles = specs
                    .iter()
                    .enumerate()
                    .map(|(i, a)| a.to_half_angle().map_err(|m| field(&format!("half_angles[{i}]"), &m)))
                    .collect::<Result<Vec<_>, _>>()?;
                normalize_circle(&angles, radius)
                    .map(Configuration::Circle)
                    .map_err(|e| geometry("half_angles", e))
            }
            Kind::Line => {
                if self.half_angles.is_some() || self.radius.is_some() {
                    return Err(field("half_angles", "not allowed for a line"));
                }
                let specs = self.positions.as_ref().ok_or_else(|| field("positions", "missing"))?;
                let positions = specs
                    .iter()
                    .enumerate()
                    .map(|(i, p)| p.to_rational().map_err(|m| field(&format!("positions[{i}]"), &m)))
                    .collect::<Result<Vec<_>, _>>()?;
                CollinearConfig::new(positions).map(Configuration::Line).map_err(|e| geometry("positions", e))
            }
        }
    }
}

/// `sha256:<hex>` of the raw file bytes.
pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

fn field(name: &str, message: &str) -> CliError {
    CliError::Field { field: name.to_string(), message: message.to_string() }
}

fn geometry(list: &str, e: GeometryError) -> CliError {
    match e {
        GeometryError::InvalidRadius(r) => field("radius", &format!("must be positive, got {r}")),
        GeometryError::DegenerateConfiguration { first, second } => {
            CliError::Degenerate(format!("{list}[{first}] and {list}[{second}] coincide"))
        }
        other => CliError::Degenerate(format!("{list}: {other}")),
    }
}
