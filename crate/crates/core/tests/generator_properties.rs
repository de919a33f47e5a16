mod common;

use aerorisk_core::bn::{
    noisy_or_cpt, ranked_aggregation_cpt, weighted_activation, NodeKind, NodeSpec, RankedKernel,
};
use common::quadrature_masses;
use proptest::prelude::*;

fn binaries(n: usize) -> Vec<NodeSpec> {
    (0..n)
        .map(|i| NodeSpec::binary(format!("X{i}"), NodeKind::Observable))
        .collect()
}

fn ordered_child(states: usize) -> NodeSpec {
    NodeSpec::new(
        "Y",
        (0..states).map(|s| format!("level{s}")),
        NodeKind::Intermediate,
    )
}

/// Upper tails from the most severe state (index 0) downwards.
fn severe_tails(p: &[f64]) -> Vec<f64> {
    p.iter()
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

fn row_for(parents: &[NodeSpec], active: &[bool]) -> Vec<String> {
    parents
        .iter()
        .zip(active)
        .map(|(p, &a)| p.states[usize::from(a)].clone())
        .collect()
}

proptest! {
    #[test]
    fn noisy_or_matches_closed_form(
        weights in prop::collection::vec(0.0f64..=1.0, 0..6),
        leak in 0.0f64..=1.0,
    ) {
        let parents = binaries(weights.len());
        let refs: Vec<&NodeSpec> = parents.iter().collect();
        let cpt = noisy_or_cpt(&NodeSpec::binary("Y", NodeKind::Target), &refs, &weights, leak).unwrap();
        prop_assert_eq!(cpt.rows.len(), 1 << weights.len());
        for row in &cpt.rows {
            let mut stay_off = 1.0 - leak;
            for (s, w) in row.parent_states.iter().zip(&weights) {
                if s == "YES" {
                    stay_off *= 1.0 - w;
                }
            }
            prop_assert!((row.probabilities[1] - (1.0 - stay_off)).abs() <= 1e-12);
            prop_assert!((row.probabilities.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn noisy_or_is_monotone_in_parents(
        weights in prop::collection::vec(0.0f64..=1.0, 1..6),
        leak in 0.0f64..=1.0,
        mask in any::<u32>(),
        flip in any::<prop::sample::Index>(),
    ) {
        let n = weights.len();
        let parents = binaries(n);
        let refs: Vec<&NodeSpec> = parents.iter().collect();
        let cpt = noisy_or_cpt(&NodeSpec::binary("Y", NodeKind::Target), &refs, &weights, leak).unwrap();
        let mut active: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        let k = flip.index(n);
        active[k] = false;
        let off = cpt.row(&row_for(&parents, &active).iter().map(String::as_str).collect::<Vec<_>>()).unwrap()[1];
        active[k] = true;
        let on = cpt.row(&row_for(&parents, &active).iter().map(String::as_str).collect::<Vec<_>>()).unwrap()[1];
        prop_assert!(on >= off - 1e-15);
    }

    #[test]
    fn kernel_masses_match_quadrature(
        states in 2usize..=6,
        half_width in 0.05f64..=1.0,
        centre in 0.0f64..=1.0,
    ) {
        let k = RankedKernel::uniform(states, half_width).unwrap();
        let closed = k.interval_masses(centre);
        let quad = quadrature_masses(&k.cutpoints, half_width, centre);
        for (a, b) in closed.iter().zip(&quad) {
            prop_assert!((a - b).abs() <= 1e-12, "{closed:?} vs {quad:?}");
        }
        prop_assert!((closed.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn kernel_is_stochastically_monotone_in_activation(
        states in 2usize..=6,
        half_width in 0.05f64..=1.0,
        a in 0.0f64..=1.0,
        b in 0.0f64..=1.0,
    ) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let k = RankedKernel::uniform(states, half_width).unwrap();
        // masses are lowest interval first, so reverse to most-severe-first
        let mut m_lo = k.interval_masses(lo);
        let mut m_hi = k.interval_masses(hi);
        m_lo.reverse();
        m_hi.reverse();
        for (t_hi, t_lo) in severe_tails(&m_hi).iter().zip(severe_tails(&m_lo)) {
            prop_assert!(*t_hi >= t_lo - 1e-12);
        }
    }

    #[test]
    fn ranked_aggregation_dominance(
        weights in prop::collection::vec(0.0f64..=5.0, 1..7),
        mask in any::<u32>(),
        flip in any::<prop::sample::Index>(),
    ) {
        prop_assume!(weights.iter().sum::<f64>() > 0.0);
        let n = weights.len();
        let parents = binaries(n);
        let refs: Vec<&NodeSpec> = parents.iter().collect();
        let kernel = RankedKernel::new(vec![0.25, 0.5, 0.75], 0.3).unwrap();
        let cpt = ranked_aggregation_cpt(&ordered_child(4), &refs, &weights, &kernel).unwrap();
        for row in &cpt.rows {
            prop_assert!((row.probabilities.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            prop_assert!(row.probabilities.iter().all(|&p| p >= 0.0));
        }
        let mut active: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        let k = flip.index(n);
        active[k] = false;
        let a_off = weighted_activation(&weights, &active);
        let off = cpt.row(&row_for(&parents, &active).iter().map(String::as_str).collect::<Vec<_>>()).unwrap().to_vec();
        active[k] = true;
        let a_on = weighted_activation(&weights, &active);
        let on = cpt.row(&row_for(&parents, &active).iter().map(String::as_str).collect::<Vec<_>>()).unwrap().to_vec();
        prop_assert!(a_on >= a_off);
        for (t_on, t_off) in severe_tails(&on).iter().zip(severe_tails(&off)) {
            prop_assert!(*t_on >= t_off - 1e-12, "{on:?} vs {off:?}");
        }
    }
}
