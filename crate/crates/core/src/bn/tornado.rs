//! One-way sensitivity of a target state to each sensitivity node.

use serde::{Deserialize, Serialize};

use super::elimination::variable_elimination_posterior;
use super::inference::{query_index, Evidence, InferenceError};
use super::network::BayesianNetwork;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateValue {
    pub state: String,
    /// `None` when the state is impossible given the base evidence.
    pub value: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TornadoRow {
    pub node: String,
    pub values: Vec<StateValue>,
    pub min: f64,
    pub max: f64,
    pub bar_length: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TornadoReport {
    pub target: String,
    pub target_state: String,
    /// `P(target = target_state | base evidence)`.
    pub baseline: f64,
    /// Sorted by descending bar length, ties by node name.
    pub rows: Vec<TornadoRow>,
}

pub fn sensitivity_tornado(
    net: &BayesianNetwork,
    target: &str,
    target_state: &str,
    sensitivity_nodes: &[&str],
    base_evidence: &Evidence,
) -> Result<TornadoReport, InferenceError> {
    let t = query_index(net, target)?;
    let ts = net
        .node(t)
        .state_index(target_state)
        .ok_or_else(|| InferenceError::UnknownState {
            node: target.to_string(),
            state: target_state.to_string(),
        })?;
    for &n in sensitivity_nodes {
        query_index(net, n)?;
        if n == target {
            return Err(InferenceError::TargetIsSensitivityNode(n.to_string()));
        }
        if base_evidence.contains(n) {
            return Err(InferenceError::SensitivityNodeObserved(n.to_string()));
        }
    }

    let baseline = variable_elimination_posterior(net, base_evidence, target)?.probabilities[ts];

    let mut rows = Vec::with_capacity(sensitivity_nodes.len());
    for &n in sensitivity_nodes {
        let spec = net.node_by_name(n).expect("checked above");
        let mut values = Vec::with_capacity(spec.states.len());
        for s in &spec.states {
            let e = base_evidence.clone().with(n, s.as_str());
            let value = match variable_elimination_posterior(net, &e, target) {
                Ok(d) => Some(d.probabilities[ts]),
                Err(InferenceError::ZeroEvidenceProbability) => None,
                Err(other) => return Err(other),
            };
            values.push(StateValue {
                state: s.clone(),
                value,
            });
        }
        let defined = values.iter().filter_map(|v| v.value);
        let min = defined.clone().fold(f64::INFINITY, f64::min);
        let max = defined.fold(f64::NEG_INFINITY, f64::max);
        rows.push(TornadoRow {
            node: n.to_string(),
            values,
            min,
            max,
            bar_length: max - min,
        });
    }
    rows.sort_by(|a, b| {
        b.bar_length
            .total_cmp(&a.bar_length)
            .then_with(|| a.node.cmp(&b.node))
    });
    Ok(TornadoReport {
        target: target.to_string(),
        target_state: target_state.to_string(),
        baseline,
        rows,
    })
}
