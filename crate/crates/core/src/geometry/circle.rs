use crate::arithmetic::{Complex, ExactRational, GaussianRational, Real, SignedLogValue};

use super::{GeometryError, HalfAngle};

/// Points `P_i = (ρ cos 2t_i, ρ sin 2t_i)` on a circle centred at the origin,
/// stored by sorted half-angles `0 <= t_1 < … < t_N < π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleConfig {
    radius: ExactRational,
    half_angles: Vec<HalfAngle>,
    permutation: Vec<usize>,
}

/// Reduces every half-angle into `[0, π)` and sorts.
///
/// `permutation()[i]` on the result is the input index of sorted point `i`.
pub fn normalize_circle(raw_half_angles: &[HalfAngle], radius: ExactRational) -> Result<CircleConfig, GeometryError> {
    if raw_half_angles.is_empty() {
        return Err(GeometryError::Empty);
    }
    if radius.signum() <= 0 {
        return Err(GeometryError::InvalidRadius(radius));
    }
    let reduced: Vec<HalfAngle> = raw_half_angles.iter().map(HalfAngle::reduce).collect();
    let mut order: Vec<usize> = (0..reduced.len()).collect();
    order.sort_by(|&i, &j| reduced[i].cmp(&reduced[j]));
    for w in order.windows(2) {
        if reduced[w[0]] == reduced[w[1]] {
            let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(GeometryError::DegenerateConfiguration { first, second });
        }
    }
    let half_angles = order.iter().map(|&i| reduced[i].clone()).collect();
    Ok(CircleConfig { radius, half_angles, permutation: order })
}

impl CircleConfig {
    pub fn radius(&self) -> &ExactRational {
        &self.radius
    }

    pub fn half_angles(&self) -> &[HalfAngle] {
        &self.half_angles
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn len(&self) -> usize {
        self.half_angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.half_angles.is_empty()
    }

    /// Same points on a circle of another radius.
    pub fn with_radius(&self, radius: ExactRational) -> Result<Self, GeometryError> {
        if radius.signum() <= 0 {
            return Err(GeometryError::InvalidRadius(radius));
        }
        Ok(Self { radius, ..self.clone() })
    }

    /// `z_i = u_i²` as Gaussian rationals, if every point has rational coordinates on the unit circle.
    pub fn exact_circle_points(&self) -> Option<Vec<GaussianRational>> {
        self.half_angles.iter().map(HalfAngle::exact_circle_point).collect()
    }

    pub fn evaluate<R: Real>(&self, prec: u32) -> EvaluatedCircle<'_, R> {
        EvaluatedCircle::new(self, prec)
    }
}

/// A [`CircleConfig`] with its numeric data prepared at one precision.
pub struct EvaluatedCircle<'a, R> {
    config: &'a CircleConfig,
    prec: u32,
    radius: R,
    guarded: Vec<Option<R>>,
}

const ANGLE_GUARD: u32 = 32;

impl<'a, R: Real> EvaluatedCircle<'a, R> {
    fn new(config: &'a CircleConfig, prec: u32) -> Self {
        let all_linear = config.half_angles.iter().all(HalfAngle::is_linear);
        let guarded = config
            .half_angles
            .iter()
            .map(|t| if all_linear { None } else { Some(t.evaluate::<R>(prec + ANGLE_GUARD)) })
            .collect();
        Self { config, prec, radius: R::from_rational(&config.radius, prec), guarded }
    }

    pub fn config(&self) -> &CircleConfig {
        self.config
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn len(&self) -> usize {
        self.config.len()
    }

    pub fn is_empty(&self) -> bool {
        self.config.is_empty()
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<(), GeometryError> {
        let len = self.len();
        for index in [i, j] {
            if index >= len {
                return Err(GeometryError::IndexOutOfRange { index, len });
            }
        }
        if i == j {
            return Err(GeometryError::SamePoint(i));
        }
        Ok(())
    }

    /// `t_j - t_i` for `j > i`.
    fn gap(&self, i: usize, j: usize) -> R {
        let (ti, tj) = (&self.config.half_angles[i], &self.config.half_angles[j]);
        match (&self.guarded[i], &self.guarded[j]) {
            (Some(gi), Some(gj)) if !(ti.is_linear() && tj.is_linear()) => (gj.clone() - gi.clone()).reprec(self.prec),
            _ => tj.difference(ti, self.prec),
        }
    }

    /// `π - (t_N - t_1)`: the gap across the wrap-around.
    fn wrap_gap(&self) -> R {
        let n = self.len();
        let (first, last) = (&self.config.half_angles[0], &self.config.half_angles[n - 1]);
        match (&self.guarded[0], &self.guarded[n - 1]) {
            (Some(g0), Some(gn)) if !(first.is_linear() && last.is_linear()) => {
                let end = g0.clone() + R::pi(self.prec + ANGLE_GUARD);
                (end - gn.clone()).reprec(self.prec)
            }
            _ => first.shift_pi(1).difference(last, self.prec),
        }
    }

    fn chord_from_gap(&self, gap: &R) -> R {
        (self.radius.clone() * gap.sin()).mul_pow2(1)
    }

    /// `2ρ sin|t_j - t_i|`.
    pub fn chord_distance(&self, i: usize, j: usize) -> Result<R, GeometryError> {
        self.check_pair(i, j)?;
        Ok(self.chord_from_gap(&self.gap(i.min(j), i.max(j))))
    }

    /// `2ρ sin(t_j - t_i)`: positive when `i < j`.
    pub fn signed_chord(&self, i: usize, j: usize) -> Result<R, GeometryError> {
        let d = self.chord_distance(i, j)?;
        Ok(if i < j { d } else { -d })
    }

    /// `u_i = e^(i t_i)`.
    pub fn unit_parameters(&self) -> Vec<Complex<R>> {
        self.config.half_angles.iter().map(|t| Complex::cis(&t.evaluate::<R>(self.prec))).collect()
    }

    /// Smallest gap between cyclically adjacent half-angles, including the wrap-around.
    pub fn min_gap(&self) -> R {
        let mut gaps: Vec<R> = (1..self.len()).map(|i| self.gap(i - 1, i)).collect();
        gaps.push(self.wrap_gap());
        min_by_estimate(gaps)
    }

    /// `R_i = ∏_{j≠i} d_{i,j}` for every point, accumulated in log space.
    pub fn chord_products(&self) -> Result<ChordProducts<R>, GeometryError> {
        let n = self.len();
        if n < 2 {
            return Err(GeometryError::TooFewPoints { needed: 2, got: n });
        }
        let mut products: Vec<SignedLogValue<R>> = (0..n).map(|_| SignedLogValue::zero(self.prec)).collect();
        let mut started = vec![false; n];
        let mut chords = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let d = self.chord_from_gap(&self.gap(i, j));
                if d.signum() <= 0 {
                    return Err(GeometryError::DegenerateConfiguration { first: i, second: j });
                }
                let log = SignedLogValue::from_value(&d);
                for k in [i, j] {
                    products[k] = if started[k] { products[k].mul(&log) } else { log.clone() };
                    started[k] = true;
                }
                chords.push(d);
            }
        }
        Ok(ChordProducts { products, min_chord: min_by_estimate(chords), min_gap: self.min_gap() })
    }
}

fn min_by_estimate<R: Real>(values: Vec<R>) -> R {
    values
        .into_iter()
        .min_by(|x, y| x.estimate().cmp(&y.estimate()))
        .expect("nonempty")
}

/// The chord products of a configuration plus conditioning data.
#[derive(Clone, Debug)]
pub struct ChordProducts<R> {
    pub products: Vec<SignedLogValue<R>>,
    pub min_chord: R,
    pub min_gap: R,
}

impl<R: Real> ChordProducts<R> {
    pub fn len(&self) -> usize {
        self.products.len()
    }

    pub fn is_empty(&self) -> bool {
        self.products.is_empty()
    }

    /// `R_i` as plain values.
    pub fn values(&self) -> Vec<R> {
        self.products.iter().map(SignedLogValue::to_value).collect()
    }

    /// `1/R_i`, one exponential per term.
    pub fn reciprocals(&self) -> Vec<R> {
        self.products
            .iter()
            .map(|p| p.recip().expect("chord products are nonzero").to_value())
            .collect()
    }

    /// Largest `1/R_i`, by estimate.
    pub fn max_reciprocal(&self) -> R {
        self.reciprocals()
            .into_iter()
            .max_by(|x, y| x.estimate().cmp(&y.estimate()))
            .expect("nonempty")
    }
}

pub fn chord_distance<R: Real>(config: &CircleConfig, i: usize, j: usize, prec: u32) -> Result<R, GeometryError> {
    config.evaluate::<R>(prec).chord_distance(i, j)
}

pub fn signed_chord<R: Real>(config: &CircleConfig, i: usize, j: usize, prec: u32) -> Result<R, GeometryError> {
    config.evaluate::<R>(prec).signed_chord(i, j)
}

pub fn unit_parameters<R: Real>(config: &CircleConfig, prec: u32) -> Vec<Complex<R>> {
    config.evaluate::<R>(prec).unit_parameters()
}

pub fn chord_products<R: Real>(config: &CircleConfig, prec: u32) -> Result<ChordProducts<R>, GeometryError> {
    config.evaluate::<R>(prec).chord_products()
}
