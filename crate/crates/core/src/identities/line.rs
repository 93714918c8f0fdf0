use crate::arithmetic::{ExactRational, Real, RealScalar};
use crate::geometry::CollinearConfig;

use super::AlternatingSum;

/// `Σ_{i odd} 1/R_i - Σ_{i even} 1/R_i` with `R_i = ∏_{j≠i} |x_j - x_i|`, in any backend.
pub fn collinear_alternating_sum<T: RealScalar>(positions: &[T]) -> AlternatingSum<T> {
    let zero = positions[0].zero_like();
    let (mut value, mut scale) = (zero.clone(), zero);
    for (i, xi) in positions.iter().enumerate() {
        let mut r = xi.one_like();
        for (j, xj) in positions.iter().enumerate() {
            if j != i {
                r = r * (xj.clone() - xi.clone()).abs();
            }
        }
        let recip = xi.one_like().checked_div(&r).expect("positions are distinct");
        value = if i % 2 == 0 { value + recip.clone() } else { value - recip.clone() };
        scale = scale + recip;
    }
    AlternatingSum { value, scale }
}

/// The alternating sum for points on a line, exactly. It vanishes for every count.
pub fn collinear_residual(config: &CollinearConfig) -> ExactRational {
    collinear_alternating_sum(config.positions()).value
}

/// The alternating sum with positions rounded into backend `R` at `prec` bits.
pub fn collinear_residual_at<R: Real>(config: &CollinearConfig, prec: u32) -> AlternatingSum<R> {
    let xs: Vec<R> = config.positions().iter().map(|x| R::from_rational(x, prec)).collect();
    collinear_alternating_sum(&xs)
}
