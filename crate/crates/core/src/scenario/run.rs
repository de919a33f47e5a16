use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bn::{
    variable_elimination_posterior, BayesianNetwork, Distribution, Evidence, InferenceError,
};

/// Causal queries reason from causes to effects, diagnostic ones from effects to causes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    #[default]
    Causal,
    Diagnostic,
}

/// Scenario document: `{"name", "target", "direction", "evidence": {node: state}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub target: String,
    #[serde(default)]
    pub direction: Direction,
    #[serde(default)]
    pub evidence: Evidence,
}

impl Scenario {
    pub fn new(
        name: impl Into<String>,
        target: impl Into<String>,
        direction: Direction,
        evidence: Evidence,
    ) -> Self {
        Scenario {
            name: name.into(),
            target: target.into(),
            direction,
            evidence,
        }
    }

    pub fn from_json(doc: &str) -> Result<Self, ScenarioError> {
        serde_json::from_str(doc).map_err(|e| ScenarioError::Parse(e.to_string()))
    }

    /// Direction mismatches. Mixed queries are legal, so these are warnings only.
    pub fn direction_warnings(&self, net: &BayesianNetwork) -> Vec<String> {
        let Some(t) = net.node_index(&self.target) else {
            return Vec::new();
        };
        let observed: Vec<(&str, usize)> = self
            .evidence
            .iter()
            .filter_map(|(n, _)| net.node_index(n).map(|i| (n, i)))
            .collect();
        match self.direction {
            Direction::Causal => observed
                .iter()
                .filter(|&&(_, i)| i == t || net.is_ancestor(t, i))
                .map(|(n, _)| {
                    format!(
                        "causal scenario observes {n:?}, which is not upstream of {:?}",
                        self.target
                    )
                })
                .collect(),
            Direction::Diagnostic => {
                if observed.iter().any(|&(_, i)| net.is_ancestor(t, i)) {
                    Vec::new()
                } else {
                    vec![format!(
                        "diagnostic scenario has no evidence downstream of {:?}",
                        self.target
                    )]
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub name: String,
    pub direction: Direction,
    pub evidence: Evidence,
    /// Target marginal without evidence.
    pub prior: Distribution,
    pub posterior: Distribution,
    /// `posterior - prior`, per state.
    pub delta: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ScenarioResult {
    pub fn target(&self) -> &str {
        &self.posterior.node
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("malformed scenario document: {0}")]
    Parse(String),
    #[error(transparent)]
    Inference(#[from] InferenceError),
    #[error("results do not share one target and state list")]
    MixedTargets,
    #[error("target has no state {0:?}")]
    UnknownState(String),
}

pub fn run_scenario(
    net: &BayesianNetwork,
    sc: &Scenario,
) -> Result<ScenarioResult, InferenceError> {
    let posterior = variable_elimination_posterior(net, &sc.evidence, &sc.target)?;
    let prior = variable_elimination_posterior(net, &Evidence::new(), &sc.target)?;
    let delta = posterior
        .probabilities
        .iter()
        .zip(&prior.probabilities)
        .map(|(a, b)| a - b)
        .collect();
    Ok(ScenarioResult {
        name: sc.name.clone(),
        direction: sc.direction,
        evidence: sc.evidence.clone(),
        prior,
        posterior,
        delta,
        warnings: sc.direction_warnings(net),
    })
}

/// Posterior of an upstream node given observations on effects.
pub fn diagnostic_query(
    net: &BayesianNetwork,
    observed: &Evidence,
    query: &str,
) -> Result<Distribution, InferenceError> {
    variable_elimination_posterior(net, observed, query)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub name: String,
    pub prior: f64,
    pub posterior: f64,
    pub delta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub target: String,
    pub state: String,
    /// Descending by posterior; equal posteriors ordered by name.
    pub rows: Vec<ComparisonRow>,
}

pub fn compare_scenarios(
    results: &[ScenarioResult],
    state: &str,
) -> Result<Comparison, ScenarioError> {
    let Some(first) = results.first() else {
        return Ok(Comparison {
            target: String::new(),
            state: state.to_string(),
            rows: Vec::new(),
        });
    };
    if results
        .iter()
        .any(|r| r.target() != first.target() || r.posterior.states != first.posterior.states)
    {
        return Err(ScenarioError::MixedTargets);
    }
    let idx = first
        .posterior
        .states
        .iter()
        .position(|s| s == state)
        .ok_or_else(|| ScenarioError::UnknownState(state.to_string()))?;
    let mut rows: Vec<ComparisonRow> = results
        .iter()
        .map(|r| ComparisonRow {
            name: r.name.clone(),
            prior: r.prior.probabilities[idx],
            posterior: r.posterior.probabilities[idx],
            delta: r.delta[idx],
        })
        .collect();
    rows.sort_by(|a, b| {
        b.posterior
            .total_cmp(&a.posterior)
            .then_with(|| a.name.cmp(&b.name))
    });
    Ok(Comparison {
        target: first.target().to_string(),
        state: state.to_string(),
        rows,
    })
}
