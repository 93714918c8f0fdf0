//! The `check-joseph` command: the power-sum identity on a node file.

use chordkit_core::identities::power_sum_identity;
use chordkit_core::{ExactRational, GaussianRational};
use serde::{Deserialize, Serialize};

use crate::instance::NumberSpec;
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeSpec {
    Complex { re: NumberSpec, im: NumberSpec },
    Real(NumberSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodesFile {
    pub nodes: Vec<NodeSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JosephOutcome {
    pub value: GaussianRational,
    pub exact_zero: bool,
}

impl JosephOutcome {
    pub fn value_text(&self) -> String {
        if self.value.im.is_zero() {
            self.value.re.to_string()
        } else {
            format!("{} + {}i", self.value.re, self.value.im)
        }
    }
}

/// `Σ z_i^r / ∏_{j≠i} (z_i - z_j)` over the nodes in `text`.
pub fn check_joseph(text: &str, r: u32) -> Result<JosephOutcome, CliError> {
    let file: NodesFile = serde_json::from_str(text)
        .map_err(|e| CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    let nodes = file
        .nodes
        .iter()
        .enumerate()
        .map(|(i, node)| {
            let bad = |m: String| CliError::Field { field: format!("nodes[{i}]"), message: m };
            match node {
                NodeSpec::Real(x) => Ok(GaussianRational::from_rationals(x.to_rational().map_err(bad)?, ExactRational::zero())),
                NodeSpec::Complex { re, im } => {
                    Ok(GaussianRational::from_rationals(re.to_rational().map_err(bad)?, im.to_rational().map_err(bad)?))
                }
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let value = power_sum_identity(&nodes, r).map_err(|e| CliError::Field { field: "nodes".into(), message: e.to_string() })?;
    let exact_zero = value.re.is_zero() && value.im.is_zero();
    Ok(JosephOutcome { value, exact_zero })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_and_complex_nodes() {
        let text = r#"{"nodes": ["1", {"num": "1", "den": "2"}, {"re": "0", "im": "1"}, "-3"]}"#;
        for r in 0..3 {
            assert!(check_joseph(text, r).unwrap().exact_zero);
        }
        let top = check_joseph(text, 3).unwrap();
        assert!(!top.exact_zero);
        assert_eq!(top.value_text(), "1");
    }

    #[test]
    fn duplicate_nodes_are_rejected() {
        let err = check_joseph(r#"{"nodes": ["1", "2", "1.0"]}"#, 0).unwrap_err();
        assert!(matches!(err, CliError::Field { .. }));
        assert!(matches!(check_joseph(r#"{"nodes": "1"}"#, 0), Err(CliError::Parse { .. })));
    }
}
