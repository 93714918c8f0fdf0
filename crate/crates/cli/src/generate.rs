//! Seeded instance generators.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use chordkit_core::arithmetic::Round;
use chordkit_core::{BigFloat, Configuration, ExactRational};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::instance::{AngleSpec, GeneratorInfo, InstanceFile, Kind, NumberSpec};
use crate::CliError;

/// Default gap of the clustered pair.
pub const DEFAULT_CLUSTER_GAP: &str = "1e-6";
const MAX_ATTEMPTS: usize = 64;
const GAP_PRECISION: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distribution {
    Uniform,
    Clustered,
    Regular,
    Pythagorean,
    UniformLine,
    RationalLine,
}

impl Distribution {
    pub const ALL: [Distribution; 6] = [
        Distribution::Uniform,
        Distribution::Clustered,
        Distribution::Regular,
        Distribution::Pythagorean,
        Distribution::UniformLine,
        Distribution::RationalLine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Distribution::Uniform => "uniform",
            Distribution::Clustered => "clustered",
            Distribution::Regular => "regular",
            Distribution::Pythagorean => "pythagorean",
            Distribution::UniformLine => "uniform-line",
            Distribution::RationalLine => "rational-line",
        }
    }

    pub fn kind(self) -> Kind {
        match self {
            Distribution::UniformLine | Distribution::RationalLine => Kind::Line,
            _ => Kind::Circle,
        }
    }
}

impl std::str::FromStr for Distribution {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Distribution::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| format!("unknown distribution {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenParams {
    /// Circle radius as a decimal or `p/q` literal.
    pub radius: String,
    /// Gap of the close pair in `clustered`.
    pub gap: String,
}

impl Default for GenParams {
    fn default() -> Self {
        Self { radius: "1".to_string(), gap: DEFAULT_CLUSTER_GAP.to_string() }
    }
}

/// Builds an instance; the same arguments always give the same file.
pub fn generate_instance(
    kind: Kind,
    n: usize,
    dist: Distribution,
    seed: u64,
    params: &GenParams,
) -> Result<InstanceFile, CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("need at least 2 points, got {n}")));
    }
    if dist.kind() != kind {
        return Err(CliError::Usage(format!("distribution {} does not apply to a {kind:?} instance", dist.name())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parameters = BTreeMap::new();
    let radius = parse_literal(&params.radius, "radius")?;
    if radius.signum() <= 0 {
        return Err(CliError::Usage(format!("radius must be positive, got {}", params.radius)));
    }
    if kind == Kind::Circle {
        parameters.insert("radius".to_string(), params.radius.clone());
    }
    if dist == Distribution::Clustered {
        let gap = ExactRational::parse_decimal(&params.gap).map_err(|e| CliError::Usage(e.to_string()))?;
        if gap.signum() <= 0 || gap.to_f64() >= PI / 2.0 {
            return Err(CliError::Usage(format!("gap must lie in (0, pi/2), got {}", params.gap)));
        }
        parameters.insert("gap".to_string(), params.gap.clone());
    }

    let mut last_err = None;
    for _ in 0..MAX_ATTEMPTS {
        let mut inst = match kind {
            Kind::Circle => {
                let angles = circle_angles(&mut rng, n, dist, &params.gap);
                InstanceFile::circle(radius_spec(&params.radius, &radius), angles)
            }
            Kind::Line => InstanceFile::line(line_positions(&mut rng, n, dist)),
        };
        match sort_and_measure(&mut inst) {
            Ok(()) => {
                inst.generator = Some(GeneratorInfo { distribution: dist.name().to_string(), seed, parameters });
                return Ok(inst);
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("at least one attempt"))
}

fn parse_literal(s: &str, what: &str) -> Result<ExactRational, CliError> {
    let parsed = match s.split_once('/') {
        Some((num, den)) => NumberSpec::Rational { num: num.to_string(), den: den.to_string() }.to_rational(),
        None => NumberSpec::Decimal(s.to_string()).to_rational(),
    };
    parsed.map_err(|m| CliError::Usage(format!("{what}: {m}")))
}

fn radius_spec(text: &str, value: &ExactRational) -> NumberSpec {
    if text.contains('/') {
        NumberSpec::from_rational(value)
    } else {
        NumberSpec::Decimal(text.to_string())
    }
}

fn decimal(x: f64) -> String {
    format!("{x}")
}

fn random_rational(rng: &mut ChaCha8Rng, span: i64, max_den: i64) -> ExactRational {
    ExactRational::frac(rng.gen_range(-span..=span), rng.gen_range(1..=max_den))
}

fn circle_angles(rng: &mut ChaCha8Rng, n: usize, dist: Distribution, gap: &str) -> Vec<AngleSpec> {
    match dist {
        Distribution::Regular => {
            (0..n).map(|k| AngleSpec::PiMultiple { pi_num: k as i64, pi_den: n as i64 }).collect()
        }
        Distribution::Pythagorean => (0..n)
            .map(|_| AngleSpec::Pythagorean { m: NumberSpec::from_rational(&random_rational(rng, 1000, 1000)) })
            .collect(),
        Distribution::Clustered => {
            let g = ExactRational::parse_decimal(gap).expect("validated");
            let base = rng.gen_range(0.0..PI - g.to_f64());
            let base = decimal(base);
            let base_q = ExactRational::parse_decimal(&base).expect("formatted float");
            let partner = (&base_q + &g).to_finite_decimal().expect("sum of decimals");
            let mut angles = vec![AngleSpec::Decimal(base), AngleSpec::Decimal(partner)];
            angles.extend((2..n).map(|_| AngleSpec::Decimal(decimal(rng.gen_range(0.0..PI)))));
            angles
        }
        _ => (0..n).map(|_| AngleSpec::Decimal(decimal(rng.gen_range(0.0..PI)))).collect(),
    }
}

fn line_positions(rng: &mut ChaCha8Rng, n: usize, dist: Distribution) -> Vec<NumberSpec> {
    match dist {
        Distribution::RationalLine => {
            (0..n).map(|_| NumberSpec::from_rational(&random_rational(rng, 1000, 100))).collect()
        }
        _ => (0..n).map(|_| NumberSpec::Decimal(decimal(rng.gen_range(-1.0..1.0)))).collect(),
    }
}

/// Reorders the points into sorted order and records the minimum gap.
fn sort_and_measure(inst: &mut InstanceFile) -> Result<(), CliError> {
    let config = inst.to_configuration()?;
    let gap = match &config {
        Configuration::Circle(c) => {
            let order = c.permutation().to_vec();
            let specs = inst.half_angles.take().expect("circle");
            inst.half_angles = Some(order.iter().map(|&i| specs[i].clone()).collect());
            c.evaluate::<BigFloat>(GAP_PRECISION).min_gap()
        }
        Configuration::Line(c) => {
            let order = c.permutation().to_vec();
            let specs = inst.positions.take().expect("line");
            inst.positions = Some(order.iter().map(|&i| specs[i].clone()).collect());
            BigFloat::from_rational(&c.min_gap(), GAP_PRECISION, Round::Nearest)
        }
    };
    inst.min_gap = Some(gap.to_scientific());
    Ok(())
}
