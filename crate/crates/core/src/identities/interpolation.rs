use crate::arithmetic::Scalar;

use super::IdentityError;

/// Nodes `z_1 … z_N` with values `P(z_i)`.
#[derive(Clone, Debug)]
pub struct InterpolationProblem<T> {
    nodes: Vec<T>,
    values: Vec<T>,
}

impl<T: Scalar> InterpolationProblem<T> {
    pub fn new(nodes: Vec<T>, values: Vec<T>) -> Result<Self, IdentityError> {
        if nodes.is_empty() {
            return Err(IdentityError::Empty);
        }
        if nodes.len() != values.len() {
            return Err(IdentityError::LengthMismatch { expected: nodes.len(), got: values.len() });
        }
        check_distinct(&nodes)?;
        Ok(Self { nodes, values })
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

pub(crate) fn check_distinct<T: Scalar>(nodes: &[T]) -> Result<(), IdentityError> {
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if (nodes[i].clone() - nodes[j].clone()).is_zero() {
                return Err(IdentityError::DuplicateNode { first: i, second: j });
            }
        }
    }
    Ok(())
}

/// `∏_{j≠i} (z_i - z_j)` for every `i`.
fn node_denominators<T: Scalar>(nodes: &[T]) -> Vec<T> {
    (0..nodes.len())
        .map(|i| {
            let mut acc = nodes[i].one_like();
            for (j, zj) in nodes.iter().enumerate() {
                if j != i {
                    acc = acc * (nodes[i].clone() - zj.clone());
                }
            }
            acc
        })
        .collect()
}

fn divide<T: Scalar>(num: &T, den: &T) -> Result<T, IdentityError> {
    num.checked_div(den).ok_or(IdentityError::Indeterminate)
}

/// The Lagrange form `Σ_i P(z_i) ∏_{k≠i} (z - z_k) / (z_i - z_k)` at `z`.
pub fn lagrange_interpolate<T: Scalar>(problem: &InterpolationProblem<T>, z: &T) -> Result<T, IdentityError> {
    let nodes = &problem.nodes;
    let dens = node_denominators(nodes);
    let mut sum = z.zero_like();
    for (i, (value, den)) in problem.values.iter().zip(&dens).enumerate() {
        let mut num = value.clone();
        for (k, zk) in nodes.iter().enumerate() {
            if k != i {
                num = num * (z.clone() - zk.clone());
            }
        }
        sum = sum + divide(&num, den)?;
    }
    Ok(sum)
}

/// `Σ_i z_i^r / ∏_{j≠i} (z_i - z_j)`.
///
/// Zero for `r <= N-2` and one for `r = N-1`. For `r >= N` it is the
/// complete homogeneous symmetric polynomial of degree `r - N + 1`.
pub fn power_sum_identity<T: Scalar>(nodes: &[T], r: u32) -> Result<T, IdentityError> {
    if nodes.is_empty() {
        return Err(IdentityError::Empty);
    }
    check_distinct(nodes)?;
    let dens = node_denominators(nodes);
    let mut sum = nodes[0].zero_like();
    for (z, den) in nodes.iter().zip(&dens) {
        sum = sum + divide(&z.powu(r), den)?;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::{BigFloat, ExactRational, GaussianRational};
    use proptest::prelude::*;

    fn q(n: i64) -> ExactRational {
        ExactRational::from(n)
    }

    fn qs(v: &[i64]) -> Vec<ExactRational> {
        v.iter().map(|&n| q(n)).collect()
    }

    #[test]
    fn interpolation_examples() {
        let line = InterpolationProblem::new(qs(&[0, 1]), qs(&[1, 3])).unwrap();
        assert_eq!(lagrange_interpolate(&line, &q(2)).unwrap(), q(5));
        let constant = InterpolationProblem::new(qs(&[-4, 2, 9]), qs(&[7, 7, 7])).unwrap();
        assert_eq!(lagrange_interpolate(&constant, &ExactRational::frac(5, 3)).unwrap(), q(7));
        let parabola = InterpolationProblem::new(qs(&[0, 1, 2]), qs(&[0, 1, 4])).unwrap();
        assert_eq!(lagrange_interpolate(&parabola, &q(3)).unwrap(), q(9));
    }

    #[test]
    fn problem_validation() {
        assert!(matches!(
            InterpolationProblem::new(qs(&[1, 2, 1]), qs(&[0, 0, 0])),
            Err(IdentityError::DuplicateNode { first: 0, second: 2 })
        ));
        assert!(matches!(
            InterpolationProblem::new(qs(&[1, 2]), qs(&[0])),
            Err(IdentityError::LengthMismatch { expected: 2, got: 1 })
        ));
        assert!(matches!(InterpolationProblem::<ExactRational>::new(vec![], vec![]), Err(IdentityError::Empty)));
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sum_identity(&qs(&[1, 2, 3]), 0).unwrap(), q(0));
        assert_eq!(power_sum_identity(&qs(&[1, 2, 3]), 2).unwrap(), q(1));
        assert_eq!(power_sum_identity(&qs(&[0, 1]), 0).unwrap(), q(0));
        assert_eq!(power_sum_identity(&qs(&[5]), 0).unwrap(), q(1));
        assert!(matches!(power_sum_identity(&qs(&[3, 3]), 0), Err(IdentityError::DuplicateNode { .. })));
    }

    #[test]
    fn power_sum_in_floats() {
        let nodes: Vec<BigFloat> = [0.5, -1.25, 2.0, 3.5].iter().map(|&x| BigFloat::from_f64(x, 128)).collect();
        assert!(power_sum_identity(&nodes, 1).unwrap().abs().to_f64() < 1e-35);
        assert!((power_sum_identity(&nodes, 3).unwrap().to_f64() - 1.0).abs() < 1e-35);
    }

    fn rational() -> impl Strategy<Value = ExactRational> {
        (-60i64..60, 1i64..30).prop_map(|(n, d)| ExactRational::frac(n, d))
    }

    fn distinct(max: usize) -> impl Strategy<Value = Vec<ExactRational>> {
        proptest::collection::btree_set(rational(), 1..=max).prop_map(|s| s.into_iter().collect())
    }

    /// Brute-force `h_k(z_1..z_N)`: sum of all degree-k monomials.
    fn complete_homogeneous(nodes: &[ExactRational], k: u32) -> ExactRational {
        fn go(nodes: &[ExactRational], k: u32) -> ExactRational {
            if k == 0 {
                return ExactRational::one();
            }
            match nodes.split_first() {
                None => ExactRational::zero(),
                Some((first, rest)) => &(first * &go(nodes, k - 1)) + &go(rest, k),
            }
        }
        go(nodes, k)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn boundary_cases_are_exact(nodes in distinct(8)) {
            let n = nodes.len() as u32;
            for r in 0..n.saturating_sub(1) {
                prop_assert!(power_sum_identity(&nodes, r).unwrap().is_zero());
            }
            prop_assert_eq!(power_sum_identity(&nodes, n - 1).unwrap(), ExactRational::one());
        }

        #[test]
        fn beyond_boundary_is_complete_homogeneous(nodes in distinct(7), extra in 0u32..4) {
            let n = nodes.len() as u32;
            prop_assert_eq!(power_sum_identity(&nodes, n - 1 + extra).unwrap(), complete_homogeneous(&nodes, extra));
        }

        #[test]
        fn interpolation_reproduces_nodes(nodes in distinct(7), seed in any::<u64>()) {
            let values: Vec<ExactRational> = nodes.iter().enumerate().map(|(i, _)| ExactRational::frac((seed.wrapping_mul(i as u64 + 7) % 97) as i64 - 48, 5)).collect();
            let p = InterpolationProblem::new(nodes.clone(), values.clone()).unwrap();
            for (z, v) in nodes.iter().zip(&values) {
                prop_assert_eq!(&lagrange_interpolate(&p, z).unwrap(), v);
            }
        }

        #[test]
        fn gaussian_nodes(re in proptest::collection::vec(-20i64..20, 4), im in proptest::collection::vec(-20i64..20, 4)) {
            let nodes: Vec<GaussianRational> = re.iter().zip(&im).map(|(&a, &b)| GaussianRational::from_rationals(q(a), q(b))).collect();
            prop_assume!(check_distinct(&nodes).is_ok());
            prop_assert!(power_sum_identity(&nodes, 2).unwrap().is_zero());
            prop_assert_eq!(power_sum_identity(&nodes, 3).unwrap(), nodes[0].one_like());
        }
    }
}
