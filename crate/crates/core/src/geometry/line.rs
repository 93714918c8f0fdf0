use crate::arithmetic::ExactRational;

use super::GeometryError;

/// Distinct points on a line, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollinearConfig {
    positions: Vec<ExactRational>,
    permutation: Vec<usize>,
}

impl CollinearConfig {
    /// Sorts the positions; `permutation()[i]` is the input index of sorted point `i`.
    pub fn new(positions: Vec<ExactRational>) -> Result<Self, GeometryError> {
        if positions.len() < 2 {
            return Err(GeometryError::TooFewPoints { needed: 2, got: positions.len() });
        }
        let mut order: Vec<usize> = (0..positions.len()).collect();
        order.sort_by(|&i, &j| positions[i].cmp(&positions[j]));
        for w in order.windows(2) {
            if positions[w[0]] == positions[w[1]] {
                let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(GeometryError::DegenerateConfiguration { first, second });
            }
        }
        let sorted = order.iter().map(|&i| positions[i].clone()).collect();
        Ok(Self { positions: sorted, permutation: order })
    }

    pub fn positions(&self) -> &[ExactRational] {
        &self.positions
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Smallest distance between neighbours.
    pub fn min_gap(&self) -> ExactRational {
        self.positions
            .windows(2)
            .map(|w| &w[1] - &w[0])
            .min()
            .expect("at least two points")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::frac(n, d)
    }

    #[test]
    fn sorts_and_tracks_labels() {
        let c = CollinearConfig::new(vec![q(3, 1), q(-1, 2), q(1, 1)]).unwrap();
        assert_eq!(c.positions(), &[q(-1, 2), q(1, 1), q(3, 1)]);
        assert_eq!(c.permutation(), &[1, 2, 0]);
        assert_eq!(c.min_gap(), q(3, 2));
    }

    #[test]
    fn rejects_duplicates_and_short_lists() {
        let err = CollinearConfig::new(vec![q(1, 2), q(0, 1), q(2, 4)]).unwrap_err();
        assert_eq!(err, GeometryError::DegenerateConfiguration { first: 0, second: 2 });
        let err = CollinearConfig::new(vec![q(1, 1)]).unwrap_err();
        assert_eq!(err, GeometryError::TooFewPoints { needed: 2, got: 1 });
    }
}
