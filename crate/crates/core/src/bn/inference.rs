//! Query-side types shared by the inference routines.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::network::{BayesianNetwork, NORMALIZATION_TOLERANCE};

/// Hard evidence: each observed node is fixed to exactly one state.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Evidence(BTreeMap<String, String>);

impl Evidence {
    pub fn new() -> Self {
        Evidence::default()
    }

    pub fn with(mut self, node: impl Into<String>, state: impl Into<String>) -> Self {
        self.0.insert(node.into(), state.into());
        self
    }

    /// Sets `node`, returning the previously observed state if any.
    pub fn insert(&mut self, node: impl Into<String>, state: impl Into<String>) -> Option<String> {
        self.0.insert(node.into(), state.into())
    }

    pub fn get(&self, node: &str) -> Option<&str> {
        self.0.get(node).map(String::as_str)
    }

    pub fn contains(&self, node: &str) -> bool {
        self.0.contains_key(node)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Node and state indices, checked against `net`.
    pub fn resolve(&self, net: &BayesianNetwork) -> Result<Vec<(usize, usize)>, InferenceError> {
        self.iter()
            .map(|(node, state)| {
                let i = net
                    .node_index(node)
                    .ok_or_else(|| InferenceError::UnknownNode(node.to_string()))?;
                let s =
                    net.node(i)
                        .state_index(state)
                        .ok_or_else(|| InferenceError::UnknownState {
                            node: node.to_string(),
                            state: state.to_string(),
                        })?;
                Ok((i, s))
            })
            .collect()
    }
}

impl<K: Into<String>, V: Into<String>> FromIterator<(K, V)> for Evidence {
    fn from_iter<T: IntoIterator<Item = (K, V)>>(iter: T) -> Self {
        Evidence(
            iter.into_iter()
                .map(|(k, v)| (k.into(), v.into()))
                .collect(),
        )
    }
}

/// Probability vector over one node's states, in the node's state order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub node: String,
    pub states: Vec<String>,
    pub probabilities: Vec<f64>,
}

impl Distribution {
    pub fn probability(&self, state: &str) -> Option<f64> {
        self.states
            .iter()
            .position(|s| s == state)
            .map(|i| self.probabilities[i])
    }

    pub fn sum(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.sum() - 1.0).abs() <= NORMALIZATION_TOLERANCE
            && self.probabilities.iter().all(|&p| p >= 0.0)
    }

    /// Largest per-state absolute difference. Panics if the state lists differ in length.
    pub fn max_abs_diff(&self, other: &Distribution) -> f64 {
        assert_eq!(self.probabilities.len(), other.probabilities.len());
        self.probabilities
            .iter()
            .zip(&other.probabilities)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub(crate) fn from_unnormalized(
        net: &BayesianNetwork,
        node: usize,
        weights: Vec<f64>,
    ) -> Result<Self, InferenceError> {
        let z: f64 = weights.iter().sum();
        if z.is_nan() || z <= 0.0 {
            return Err(InferenceError::ZeroEvidenceProbability);
        }
        let spec = net.node(node);
        Ok(Distribution {
            node: spec.name.clone(),
            states: spec.states.clone(),
            probabilities: weights.into_iter().map(|w| w / z).collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InferenceError {
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("node {node:?} has no state {state:?}")]
    UnknownState { node: String, state: String },
    #[error("evidence has probability zero")]
    ZeroEvidenceProbability,
    #[error("joint state space of {0} entries is too large to enumerate")]
    StateSpaceTooLarge(u128),
    #[error("target {0:?} cannot also be a sensitivity node")]
    TargetIsSensitivityNode(String),
    #[error("sensitivity node {0:?} is already fixed by the base evidence")]
    SensitivityNodeObserved(String),
}

pub(crate) fn query_index(net: &BayesianNetwork, q: &str) -> Result<usize, InferenceError> {
    net.node_index(q)
        .ok_or_else(|| InferenceError::UnknownNode(q.to_string()))
}
