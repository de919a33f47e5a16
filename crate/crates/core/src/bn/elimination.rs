//! Exact posterior queries by variable elimination.
//!
//! Only the ancestral closure of the query and evidence nodes is used; every other node
//! is barren and sums out to one. Variables are eliminated greedily by minimum degree in
//! the current interaction graph, ties broken by node name.

use std::collections::BTreeSet;

use super::factor::Factor;
use super::inference::{query_index, Distribution, Evidence, InferenceError};
use super::network::BayesianNetwork;

pub fn variable_elimination_posterior(
    net: &BayesianNetwork,
    evidence: &Evidence,
    query: &str,
) -> Result<Distribution, InferenceError> {
    let q = query_index(net, query)?;
    let observed = evidence.resolve(net)?;

    if let Some(&(_, s)) = observed.iter().find(|(i, _)| *i == q) {
        // P(e) must still be positive for the point mass to be defined.
        let pe = probability_of_evidence(net, &observed);
        if pe.is_nan() || pe <= 0.0 {
            return Err(InferenceError::ZeroEvidenceProbability);
        }
        let mut w = vec![0.0; net.cardinality(q)];
        w[s] = 1.0;
        return Distribution::from_unnormalized(net, q, w);
    }

    let relevant = net.ancestral_closure(observed.iter().map(|&(i, _)| i).chain([q]));
    let factors = reduced_factors(net, &relevant, &observed);
    let hidden: Vec<usize> = (0..net.len())
        .filter(|&i| relevant[i] && i != q && !observed.iter().any(|&(o, _)| o == i))
        .collect();
    let result = eliminate(net, factors, hidden);
    let weights = result.marginal_over(q);
    Distribution::from_unnormalized(net, q, weights)
}

/// `P(evidence)` by eliminating every relevant variable.
pub fn probability_of_evidence(net: &BayesianNetwork, observed: &[(usize, usize)]) -> f64 {
    let relevant = net.ancestral_closure(observed.iter().map(|&(i, _)| i));
    let factors = reduced_factors(net, &relevant, observed);
    let hidden: Vec<usize> = (0..net.len())
        .filter(|&i| relevant[i] && !observed.iter().any(|&(o, _)| o == i))
        .collect();
    eliminate(net, factors, hidden).product_all().values()[0]
}

fn reduced_factors(
    net: &BayesianNetwork,
    relevant: &[bool],
    observed: &[(usize, usize)],
) -> Vec<Factor> {
    (0..net.len())
        .filter(|&i| relevant[i])
        .map(|i| {
            let mut vars: Vec<usize> = net.parents(i).to_vec();
            vars.push(i);
            let cards = vars.iter().map(|&v| net.cardinality(v)).collect();
            let mut f = Factor::new(vars, cards, net.table(i).to_vec());
            for &(o, s) in observed {
                f = f.reduce(o, s);
            }
            f
        })
        .collect()
}

struct Pool(Vec<Factor>);

impl Pool {
    fn product_all(self) -> Factor {
        self.0
            .into_iter()
            .fold(Factor::scalar(1.0), |acc, f| acc.product(&f))
    }

    /// Unnormalized weights over `q`, the only variable left in the pool.
    fn marginal_over(self, q: usize) -> Vec<f64> {
        let f = self.product_all();
        debug_assert_eq!(f.vars(), [q]);
        f.values().to_vec()
    }
}

fn eliminate(net: &BayesianNetwork, factors: Vec<Factor>, hidden: Vec<usize>) -> Pool {
    let mut pool = factors;
    let mut remaining: BTreeSet<usize> = hidden.into_iter().collect();
    while !remaining.is_empty() {
        let var = next_variable(net, &pool, &remaining);
        remaining.remove(&var);
        let (touching, rest): (Vec<Factor>, Vec<Factor>) =
            pool.into_iter().partition(|f| f.contains(var));
        pool = rest;
        if touching.is_empty() {
            continue;
        }
        let merged = touching
            .into_iter()
            .reduce(|a, b| a.product(&b))
            .expect("non-empty");
        pool.push(merged.marginalize(var));
    }
    Pool(pool)
}

/// Minimum number of distinct neighbours; ties by node name.
fn next_variable(net: &BayesianNetwork, pool: &[Factor], remaining: &BTreeSet<usize>) -> usize {
    remaining
        .iter()
        .copied()
        .min_by(|&a, &b| {
            degree(pool, a)
                .cmp(&degree(pool, b))
                .then_with(|| net.node(a).name.cmp(&net.node(b).name))
        })
        .expect("remaining is non-empty")
}

fn degree(pool: &[Factor], var: usize) -> usize {
    let mut neighbours = BTreeSet::new();
    for f in pool.iter().filter(|f| f.contains(var)) {
        neighbours.extend(f.vars().iter().copied().filter(|&v| v != var));
    }
    neighbours.len()
}
