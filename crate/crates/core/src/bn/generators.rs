//! Parametric CPT constructors.
//!
//! Both generators treat a two-state parent as active when it is in its second state
//! (`YES` for nodes built with [`NodeSpec::binary`]).

use thiserror::Error;

use super::network::{Cpt, CptRow, NodeSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CptError {
    #[error("node {0:?} must have exactly two states")]
    Arity(String),
    #[error("{name} = {value} is out of range")]
    Range { name: String, value: f64 },
    #[error("expected {expected} weights, got {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("weights sum to zero")]
    ZeroTotalWeight,
    #[error("invalid cutpoints: {0}")]
    Cutpoint(String),
}

/// Default half-width of the ranked-aggregation kernel.
pub const DEFAULT_HALF_WIDTH: f64 = 0.3;

fn check_unit(name: impl Into<String>, value: f64) -> Result<(), CptError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(CptError::Range {
            name: name.into(),
            value,
        })
    }
}

fn check_binary(node: &NodeSpec) -> Result<(), CptError> {
    if node.states.len() == 2 {
        Ok(())
    } else {
        Err(CptError::Arity(node.name.clone()))
    }
}

/// Every assignment of the binary parents as (state names, active flags), last parent fastest.
fn binary_assignments<'a>(
    parents: &'a [&'a NodeSpec],
) -> impl Iterator<Item = (Vec<String>, Vec<bool>)> + 'a {
    let n = parents.len();
    (0..1usize << n).map(move |mask| {
        let active: Vec<bool> = (0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect();
        let names = parents
            .iter()
            .zip(&active)
            .map(|(p, &a)| p.states[usize::from(a)].clone())
            .collect();
        (names, active)
    })
}

/// Noisy-OR table: `P(child active | A) = 1 - (1 - leak) * prod_{i in A} (1 - w_i)`.
pub fn noisy_or_cpt(
    child: &NodeSpec,
    parents: &[&NodeSpec],
    weights: &[f64],
    leak: f64,
) -> Result<Cpt, CptError> {
    check_binary(child)?;
    for p in parents {
        check_binary(p)?;
    }
    if weights.len() != parents.len() {
        return Err(CptError::WeightCount {
            expected: parents.len(),
            found: weights.len(),
        });
    }
    for (p, &w) in parents.iter().zip(weights) {
        check_unit(format!("weight of {}", p.name), w)?;
    }
    check_unit("leak", leak)?;

    let rows = binary_assignments(parents)
        .map(|(parent_states, active)| {
            let inhibit: f64 = weights
                .iter()
                .zip(&active)
                .filter(|(_, &a)| a)
                .map(|(w, _)| 1.0 - w)
                .product();
            let yes = 1.0 - (1.0 - leak) * inhibit;
            CptRow {
                parent_states,
                probabilities: vec![1.0 - yes, yes],
            }
        })
        .collect();
    Ok(Cpt {
        child: child.name.clone(),
        parents: parents.iter().map(|p| p.name.clone()).collect(),
        rows,
    })
}

/// Shape of the ranked-aggregation kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct RankedKernel {
    /// Interior boundaries of the activation partition, strictly increasing in (0, 1).
    pub cutpoints: Vec<f64>,
    pub half_width: f64,
}

impl RankedKernel {
    pub fn new(cutpoints: Vec<f64>, half_width: f64) -> Result<Self, CptError> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(CptError::Range {
                name: "half_width".into(),
                value: half_width,
            });
        }
        for &c in &cutpoints {
            if !(c > 0.0 && c < 1.0) {
                return Err(CptError::Cutpoint(format!("{c} is not inside (0, 1)")));
            }
        }
        if cutpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CptError::Cutpoint(format!(
                "{cutpoints:?} is not strictly increasing"
            )));
        }
        Ok(RankedKernel {
            cutpoints,
            half_width,
        })
    }

    /// Evenly spaced cutpoints for `states` ordered states.
    pub fn uniform(states: usize, half_width: f64) -> Result<Self, CptError> {
        let cuts = (1..states).map(|k| k as f64 / states as f64).collect();
        RankedKernel::new(cuts, half_width)
    }

    /// Mass of the kernel centred at `activation` on each partition interval, lowest
    /// interval first. The triangle is truncated to [0, 1] and renormalized.
    pub fn interval_masses(&self, activation: f64) -> Vec<f64> {
        let edges: Vec<f64> = std::iter::once(0.0)
            .chain(self.cutpoints.iter().copied())
            .chain(std::iter::once(1.0))
            .collect();
        let cdf: Vec<f64> = edges
            .iter()
            .map(|&x| triangular_cdf(x, activation, self.half_width))
            .collect();
        let total = cdf[cdf.len() - 1] - cdf[0];
        cdf.windows(2).map(|w| (w[1] - w[0]) / total).collect()
    }
}

fn triangular_cdf(x: f64, centre: f64, h: f64) -> f64 {
    let lo = centre - h;
    let hi = centre + h;
    if x <= lo {
        0.0
    } else if x >= hi {
        1.0
    } else if x <= centre {
        (x - lo).powi(2) / (2.0 * h * h)
    } else {
        1.0 - (hi - x).powi(2) / (2.0 * h * h)
    }
}

/// Weighted activation of the active parents, in [0, 1].
pub fn weighted_activation(weights: &[f64], active: &[bool]) -> f64 {
    let total: f64 = weights.iter().sum();
    let on: f64 = weights
        .iter()
        .zip(active)
        .filter(|(_, &a)| a)
        .map(|(w, _)| w)
        .sum();
    (on / total).clamp(0.0, 1.0)
}

/// Ranked aggregation of binary parents onto an ordered child.
///
/// `child.states` must be ordered most severe first: the highest activation interval
/// maps to `states[0]`.
pub fn ranked_aggregation_cpt(
    child: &NodeSpec,
    parents: &[&NodeSpec],
    weights: &[f64],
    kernel: &RankedKernel,
) -> Result<Cpt, CptError> {
    for p in parents {
        check_binary(p)?;
    }
    if weights.len() != parents.len() {
        return Err(CptError::WeightCount {
            expected: parents.len(),
            found: weights.len(),
        });
    }
    for (p, &w) in parents.iter().zip(weights) {
        if !(w >= 0.0 && w.is_finite()) {
            return Err(CptError::Range {
                name: format!("weight of {}", p.name),
                value: w,
            });
        }
    }
    let total: f64 = weights.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return Err(CptError::ZeroTotalWeight);
    }
    if kernel.cutpoints.len() + 1 != child.states.len() {
        return Err(CptError::Cutpoint(format!(
            "{} cutpoints for {} states of {}",
            kernel.cutpoints.len(),
            child.states.len(),
            child.name
        )));
    }

    let rows = binary_assignments(parents)
        .map(|(parent_states, active)| {
            let mut probabilities = kernel.interval_masses(weighted_activation(weights, &active));
            probabilities.reverse();
            CptRow {
                parent_states,
                probabilities,
            }
        })
        .collect();
    Ok(Cpt {
        child: child.name.clone(),
        parents: parents.iter().map(|p| p.name.clone()).collect(),
        rows,
    })
}
