//! Random valid networks for property tests and benchmarks.

use rand::Rng;

use super::inference::Evidence;
use super::network::{build_network, BayesianNetwork, Cpt, CptRow, NodeKind, NodeSpec};

/// Draws a random DAG over `nodes` nodes with 2..=`max_states` states each and
/// Dirichlet(1)-like CPT rows. Each node takes up to `max_parents` parents among
/// earlier nodes. State counts are reduced while the joint exceeds `max_joint`.
pub fn random_network<R: Rng>(
    rng: &mut R,
    nodes: usize,
    max_states: usize,
    max_parents: usize,
    max_joint: u64,
) -> BayesianNetwork {
    assert!(max_states >= 2);
    let mut cards: Vec<usize> = (0..nodes)
        .map(|_| rng.random_range(2..=max_states))
        .collect();
    while cards.iter().map(|&c| c as u64).product::<u64>() > max_joint {
        let i = (0..nodes).max_by_key(|&i| cards[i]).expect("non-empty");
        if cards[i] == 2 {
            break;
        }
        cards[i] -= 1;
    }
    // shuffle names so elimination tie-breaks do not follow index order
    let mut labels: Vec<usize> = (0..nodes).collect();
    for i in (1..nodes).rev() {
        labels.swap(i, rng.random_range(0..=i));
    }
    let specs: Vec<NodeSpec> = (0..nodes)
        .map(|i| {
            NodeSpec::new(
                format!("n{:02}", labels[i]),
                (0..cards[i]).map(|s| format!("s{s}")),
                NodeKind::Intermediate,
            )
        })
        .collect();

    let mut cpts = Vec::with_capacity(nodes);
    for i in 0..nodes {
        let k = rng.random_range(0..=max_parents.min(i));
        let mut candidates: Vec<usize> = (0..i).collect();
        let mut parents = Vec::with_capacity(k);
        for _ in 0..k {
            let j = rng.random_range(0..candidates.len());
            parents.push(candidates.swap_remove(j));
        }
        let pcards: Vec<usize> = parents.iter().map(|&p| cards[p]).collect();
        let n_rows: usize = pcards.iter().product();
        let rows = (0..n_rows)
            .map(|r| {
                let states = super::network::decode(r, &pcards);
                CptRow {
                    parent_states: states
                        .iter()
                        .zip(&parents)
                        .map(|(&s, &p)| specs[p].states[s].clone())
                        .collect(),
                    probabilities: random_simplex(rng, cards[i]),
                }
            })
            .collect();
        cpts.push(Cpt {
            child: specs[i].name.clone(),
            parents: parents.iter().map(|&p| specs[p].name.clone()).collect(),
            rows,
        });
    }
    build_network(specs, cpts).expect("generated network is valid")
}

/// A point on the probability simplex; occasionally contains exact zeros.
pub fn random_simplex<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n)
        .map(|_| {
            if rng.random_bool(0.05) {
                0.0
            } else {
                -rng.random::<f64>().max(f64::MIN_POSITIVE).ln()
            }
        })
        .collect();
    if w.iter().all(|&x| x == 0.0) {
        w[rng.random_range(0..n)] = 1.0;
    }
    let total: f64 = w.iter().sum();
    let mut p: Vec<f64> = w.into_iter().map(|x| x / total).collect();
    // push rounding residue into the largest entry so the row sums to 1 within tolerance
    let residue = 1.0 - p.iter().sum::<f64>();
    let big = (0..n)
        .max_by(|&a, &b| p[a].total_cmp(&p[b]))
        .expect("n >= 1");
    p[big] += residue;
    p
}

/// Observes up to `max_observed` random nodes in random states.
pub fn random_evidence<R: Rng>(
    rng: &mut R,
    net: &BayesianNetwork,
    max_observed: usize,
) -> Evidence {
    let k = rng.random_range(0..=max_observed.min(net.len()));
    let mut pool: Vec<usize> = (0..net.len()).collect();
    let mut e = Evidence::new();
    for _ in 0..k {
        let i = pool.swap_remove(rng.random_range(0..pool.len()));
        let spec = net.node(i);
        e.insert(
            spec.name.clone(),
            spec.states[rng.random_range(0..spec.states.len())].clone(),
        );
    }
    e
}
