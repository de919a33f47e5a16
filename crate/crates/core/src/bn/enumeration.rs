//! Posterior by summing the full joint distribution. Exact and exponential; this is
//! the reference the elimination path is checked against.

use super::inference::{query_index, Distribution, Evidence, InferenceError};
use super::network::BayesianNetwork;

/// Joint tables larger than this are refused.
pub const MAX_ENUMERATION_SIZE: u128 = 1 << 26;

pub fn joint_enumeration_posterior(
    net: &BayesianNetwork,
    evidence: &Evidence,
    query: &str,
) -> Result<Distribution, InferenceError> {
    let q = query_index(net, query)?;
    let observed = evidence.resolve(net)?;
    let size = net.joint_size();
    if size > MAX_ENUMERATION_SIZE {
        return Err(InferenceError::StateSpaceTooLarge(size));
    }

    let n = net.len();
    let cards: Vec<usize> = (0..n).map(|i| net.cardinality(i)).collect();
    let mut assignment = vec![0usize; n];
    let mut weights = vec![0.0; cards[q]];
    for _ in 0..size as usize {
        if observed.iter().all(|&(i, s)| assignment[i] == s) {
            let p: f64 = (0..n)
                .map(|i| net.local_probability(i, &assignment))
                .product();
            weights[assignment[q]] += p;
        }
        for k in (0..n).rev() {
            assignment[k] += 1;
            if assignment[k] < cards[k] {
                break;
            }
            assignment[k] = 0;
        }
    }
    Distribution::from_unnormalized(net, q, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bn::network::{build_network, Cpt, CptRow, NodeKind, NodeSpec};

    pub(crate) fn two_node(p_a: f64, yes_given_yes: f64, yes_given_no: f64) -> BayesianNetwork {
        build_network(
            vec![
                NodeSpec::binary("A", NodeKind::Observable),
                NodeSpec::binary("B", NodeKind::Target),
            ],
            vec![
                Cpt::prior("A", vec![1.0 - p_a, p_a]),
                Cpt {
                    child: "B".into(),
                    parents: vec!["A".into()],
                    rows: vec![
                        CptRow {
                            parent_states: vec!["NO".into()],
                            probabilities: vec![1.0 - yes_given_no, yes_given_no],
                        },
                        CptRow {
                            parent_states: vec!["YES".into()],
                            probabilities: vec![1.0 - yes_given_yes, yes_given_yes],
                        },
                    ],
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn marginal_of_child() {
        let net = two_node(0.2, 0.9, 0.1);
        let d = joint_enumeration_posterior(&net, &Evidence::new(), "B").unwrap();
        // 0.2 * 0.9 + 0.8 * 0.1
        assert!((d.probability("YES").unwrap() - 0.26).abs() < 1e-12);
    }

    #[test]
    fn evidence_on_query_is_point_mass() {
        let net = two_node(0.2, 0.9, 0.1);
        let d = joint_enumeration_posterior(&net, &Evidence::new().with("B", "NO"), "B").unwrap();
        assert_eq!(d.probabilities, vec![1.0, 0.0]);
    }

    #[test]
    fn impossible_evidence() {
        let net = two_node(0.2, 1.0, 0.0);
        let e = Evidence::new().with("A", "YES").with("B", "NO");
        assert_eq!(
            joint_enumeration_posterior(&net, &e, "A"),
            Err(InferenceError::ZeroEvidenceProbability)
        );
    }

    #[test]
    fn unknown_references() {
        let net = two_node(0.2, 0.9, 0.1);
        assert!(matches!(
            joint_enumeration_posterior(&net, &Evidence::new(), "C"),
            Err(InferenceError::UnknownNode(_))
        ));
        assert!(matches!(
            joint_enumeration_posterior(&net, &Evidence::new().with("A", "maybe"), "B"),
            Err(InferenceError::UnknownState { .. })
        ));
    }
}
