//! Declarative description of the crash model and its assembly into a network.
//!
//! Topology: eleven binary factor nodes feed two ranked intermediates (external and
//! internal sources), which both feed the five-state `Crash` target.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::factors::{load_frequency_table, FactorId};
use super::priors::{derive_priors, FactorPrior, Policy};
use super::CalibrationError;
use crate::bn::{
    build_network, ranked_aggregation_cpt, BayesianNetwork, Cpt, CptRow, NodeKind, NodeSpec,
    RankedKernel,
};
use crate::fixtures;

pub const EXTERNAL_NODE: &str = "ExternalSources";
pub const INTERNAL_NODE: &str = "InternalSources";
pub const CRASH_NODE: &str = "Crash";

/// Intermediate states, most severe first.
pub const INTERMEDIATE_STATES: [&str; 4] = ["frequent", "probable", "occasional", "remote"];

pub const CRASH_STATES: [&str; 5] = ["negligible", "low", "medium", "high", "very high"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FactorGroup {
    External,
    Internal,
}

impl FactorGroup {
    pub fn node_name(self) -> &'static str {
        match self {
            FactorGroup::External => EXTERNAL_NODE,
            FactorGroup::Internal => INTERNAL_NODE,
        }
    }

    /// Group implied by the factor's hazard source.
    pub fn of(factor: FactorId) -> FactorGroup {
        match factor {
            FactorId::SCFM | FactorId::ACMF | FactorId::LEP => FactorGroup::Internal,
            _ => FactorGroup::External,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregation {
    pub cutpoints: Vec<f64>,
    pub half_width: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TargetRow {
    pub external: String,
    pub internal: String,
    pub probabilities: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TargetTable {
    pub states: Vec<String>,
    pub rows: Vec<TargetRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrashModelSpec {
    pub groups: BTreeMap<FactorId, FactorGroup>,
    pub weights: BTreeMap<FactorId, f64>,
    pub aggregation: Aggregation,
    pub target: TargetTable,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CrashModelSpec {
    pub fn from_json(doc: &str) -> Result<Self, CalibrationError> {
        serde_json::from_str(doc).map_err(|e| CalibrationError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialization is infallible")
    }

    /// Factors assigned to `group`, in [`FactorId::ALL`] order.
    pub fn members(&self, group: FactorGroup) -> Vec<FactorId> {
        FactorId::ALL
            .into_iter()
            .filter(|f| self.groups.get(f) == Some(&group))
            .collect()
    }

    /// Whether the grouping matches [`FactorGroup::of`] for every factor.
    pub fn uses_source_partition(&self) -> bool {
        FactorId::ALL
            .into_iter()
            .all(|f| self.groups.get(&f) == Some(&FactorGroup::of(f)))
    }

    pub fn validate(&self) -> Result<(), CalibrationError> {
        for f in FactorId::ALL {
            if !self.groups.contains_key(&f) {
                return Err(CalibrationError::Spec(format!("factor {f} has no group")));
            }
            match self.weights.get(&f) {
                None => return Err(CalibrationError::Spec(format!("factor {f} has no weight"))),
                Some(&w) if !(w >= 0.0 && w.is_finite()) => {
                    return Err(CalibrationError::Spec(format!("weight of {f} is {w}")))
                }
                Some(_) => {}
            }
        }
        for g in [FactorGroup::External, FactorGroup::Internal] {
            let members = self.members(g);
            if members.is_empty() {
                return Err(CalibrationError::Spec(format!(
                    "group {g:?} has no factors"
                )));
            }
            if members.iter().map(|f| self.weights[f]).sum::<f64>() <= 0.0 {
                return Err(CalibrationError::Spec(format!(
                    "weights of group {g:?} are all zero"
                )));
            }
        }
        Ok(())
    }
}

/// Builds the crash network from factor priors and a model spec.
pub fn assemble_crash_model(
    priors: &[FactorPrior],
    spec: &CrashModelSpec,
) -> Result<BayesianNetwork, CalibrationError> {
    spec.validate()?;
    let by_factor: BTreeMap<FactorId, f64> = priors.iter().map(|p| (p.factor, p.p_yes)).collect();

    let mut nodes = Vec::with_capacity(FactorId::ALL.len() + 3);
    let mut cpts = Vec::with_capacity(nodes.capacity());
    for f in FactorId::ALL {
        let p = *by_factor.get(&f).ok_or(CalibrationError::Coverage(f))?;
        nodes.push(NodeSpec::binary(f.code(), NodeKind::Observable));
        cpts.push(Cpt::prior(f.code(), vec![1.0 - p, p]));
    }

    let kernel = RankedKernel::new(
        spec.aggregation.cutpoints.clone(),
        spec.aggregation.half_width,
    )?;
    for g in [FactorGroup::External, FactorGroup::Internal] {
        let child = NodeSpec::new(g.node_name(), INTERMEDIATE_STATES, NodeKind::Intermediate);
        let members = spec.members(g);
        let parent_specs: Vec<&NodeSpec> = members
            .iter()
            .map(|f| &nodes[FactorId::ALL.iter().position(|x| x == f).expect("listed")])
            .collect();
        let weights: Vec<f64> = members.iter().map(|f| spec.weights[f]).collect();
        let cpt = ranked_aggregation_cpt(&child, &parent_specs, &weights, &kernel)?;
        cpts.push(cpt);
        nodes.push(child);
    }

    nodes.push(NodeSpec::new(
        CRASH_NODE,
        spec.target.states.iter().cloned(),
        NodeKind::Target,
    ));
    cpts.push(Cpt {
        child: CRASH_NODE.to_string(),
        parents: vec![EXTERNAL_NODE.to_string(), INTERNAL_NODE.to_string()],
        rows: spec
            .target
            .rows
            .iter()
            .map(|r| CptRow {
                parent_states: vec![r.external.clone(), r.internal.clone()],
                probabilities: r.probabilities.clone(),
            })
            .collect(),
    });

    Ok(build_network(nodes, cpts)?)
}

/// The shipped crash model: fixture frequency table under `policy`, fixture spec.
pub fn default_crash_model(policy: Policy) -> Result<BayesianNetwork, CalibrationError> {
    let table = load_frequency_table(fixtures::FREQUENCY_TABLE_JSON)?;
    let priors = derive_priors(&table, policy)?;
    let spec = CrashModelSpec::from_json(fixtures::CRASH_SPEC_JSON)?;
    assemble_crash_model(&priors, &spec)
}
