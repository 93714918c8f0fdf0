use crate::arithmetic::{Complex, GaussianRational, Real, Scalar};
use crate::geometry::{ChordProducts, CircleConfig};

use super::interpolation::check_distinct;
use super::IdentityError;

/// Alternating sum of reciprocals and the sum of their magnitudes.
#[derive(Clone, Debug)]
pub struct AlternatingSum<R> {
    /// `Σ_{i odd} 1/R_i - Σ_{i even} 1/R_i`, labels counted from 1 in sorted order.
    pub value: R,
    /// `Σ_i 1/R_i`.
    pub scale: R,
}

/// The alternating sum for any point count.
pub fn alternating_reciprocal_sum<R: Real>(products: &ChordProducts<R>) -> AlternatingSum<R> {
    let recips = products.reciprocals();
    let zero = recips[0].zero_like();
    let (mut value, mut scale) = (zero.clone(), zero);
    for (k, r) in recips.into_iter().enumerate() {
        // 0-based even k is label k + 1, which is odd
        value = if k % 2 == 0 { value + r.clone() } else { value - r.clone() };
        scale = scale + r;
    }
    AlternatingSum { value, scale }
}

/// `Σ_{i odd} 1/R_i - Σ_{i even} 1/R_i`; zero for concyclic points in circular order.
pub fn mcdougall_residual<R: Real>(products: &ChordProducts<R>) -> Result<R, IdentityError> {
    if products.len() % 2 == 1 {
        return Err(IdentityError::OddCount(products.len()));
    }
    Ok(alternating_reciprocal_sum(products).value)
}

/// The same alternating sum for an odd number of points on a circle, where it does not vanish.
pub fn odd_circle_control<R: Real>(config: &CircleConfig, prec: u32) -> Result<R, IdentityError> {
    let n = config.len();
    if n < 3 || n % 2 != 1 {
        return Err(IdentityError::NotOddControl(n));
    }
    let products = config.evaluate::<R>(prec).chord_products()?;
    Ok(alternating_reciprocal_sum(&products).value)
}

/// Both sides of the complex form of the identity, with their terms.
#[derive(Clone, Debug)]
pub struct JaneSides<R> {
    /// `i^(2n-1) Σ_i (-1)^i / R_i`, labels from 1.
    pub lhs: Complex<R>,
    /// `(∏_j u_j) Σ_i u_i^(2n-2) / ∏_{j≠i} (u_j² - u_i²)`.
    pub rhs: Complex<R>,
    pub lhs_terms: Vec<Complex<R>>,
    pub rhs_terms: Vec<Complex<R>>,
}

impl<R: Real> JaneSides<R> {
    /// Largest term modulus on either side.
    pub fn max_term(&self) -> R {
        self.lhs_terms
            .iter()
            .chain(&self.rhs_terms)
            .map(Complex::modulus)
            .max_by(|a, b| a.estimate().cmp(&b.estimate()))
            .expect("at least two terms")
    }

    /// `|lhs - rhs|`.
    pub fn gap(&self) -> R {
        (self.lhs.clone() - self.rhs.clone()).modulus()
    }
}

pub fn jane_sides<R: Real>(config: &CircleConfig, prec: u32) -> Result<JaneSides<R>, IdentityError> {
    let count = config.len();
    if count % 2 == 1 {
        return Err(IdentityError::OddCount(count));
    }
    let n = count / 2;
    let eval = config.evaluate::<R>(prec);
    let recips = eval.chord_products()?.reciprocals();
    let u = eval.unit_parameters();
    let z: Vec<Complex<R>> = u.iter().map(|x| x.clone() * x.clone()).collect();
    let one = R::from_rational(&crate::arithmetic::ExactRational::one(), prec);

    let prefactor = Complex::<R>::i_pow(&one, 2 * n as i64 - 1);
    let lhs_terms: Vec<Complex<R>> = recips
        .iter()
        .enumerate()
        .map(|(k, r)| {
            // label k + 1: (-1)^(k+1)
            let signed = if k % 2 == 0 { -r.clone() } else { r.clone() };
            prefactor.scale(&signed)
        })
        .collect();

    let big_u = u.iter().cloned().reduce(|a, b| a * b).expect("nonempty");
    let mut rhs_terms = Vec::with_capacity(count);
    for i in 0..count {
        let mut den = Complex::from_real(one.clone());
        for j in (0..count).filter(|&j| j != i) {
            den = den * (z[j].clone() - z[i].clone());
        }
        let num = big_u.clone() * u[i].powu(2 * n as u32 - 2);
        let term = num.checked_div(&den).ok_or(IdentityError::Indeterminate)?;
        rhs_terms.push(term);
    }
    let sum = |terms: &[Complex<R>]| terms.iter().cloned().reduce(|a, b| a + b).expect("nonempty");
    Ok(JaneSides { lhs: sum(&lhs_terms), rhs: sum(&rhs_terms), lhs_terms, rhs_terms })
}

/// `Σ_i z_i^(n-1) / ∏_{j≠i} (z_j - z_i)` over `2n` Gaussian rationals, exactly.
///
/// With `z_i = u_i²` this is the right side above without the `∏ u_j` factor.
pub fn exact_jane_rhs(z_values: &[GaussianRational], n: usize) -> Result<GaussianRational, IdentityError> {
    if n == 0 {
        return Err(IdentityError::Empty);
    }
    if z_values.len() != 2 * n {
        return Err(IdentityError::LengthMismatch { expected: 2 * n, got: z_values.len() });
    }
    check_distinct(z_values)?;
    let mut sum = z_values[0].zero_like();
    for (i, zi) in z_values.iter().enumerate() {
        let mut den = zi.one_like();
        for (j, zj) in z_values.iter().enumerate() {
            if j != i {
                den = den * (zj.clone() - zi.clone());
            }
        }
        sum = sum + zi.powu(n as u32 - 1).checked_div(&den).expect("distinct nodes");
    }
    Ok(sum)
}
