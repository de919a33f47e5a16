//! Test oracles written independently of the library's inference code.

#![allow(dead_code)]

use std::collections::HashMap;

use aerorisk_core::bn::NetworkDocument;
use aerorisk_core::Evidence;

/// Posterior marginals of every node by brute-force summation over the joint, reading CPT
/// rows by parent state names. Returns `None` when the evidence has probability zero.
pub fn oracle_marginals(doc: &NetworkDocument, evidence: &Evidence) -> Option<Vec<Vec<f64>>> {
    let index: HashMap<&str, usize> = doc
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (n.name.as_str(), i))
        .collect();
    let cards: Vec<usize> = doc.nodes.iter().map(|n| n.states.len()).collect();
    let fixed: Vec<Option<usize>> = doc
        .nodes
        .iter()
        .map(|n| {
            evidence
                .get(&n.name)
                .map(|s| n.states.iter().position(|x| x == s).unwrap())
        })
        .collect();

    // per node: parents and a dense table indexed by (parent states, first parent slowest)
    let mut tables: Vec<Option<(Vec<usize>, Vec<f64>)>> = vec![None; doc.nodes.len()];
    for cpt in &doc.cpts {
        let child = index[cpt.child.as_str()];
        let parents: Vec<usize> = cpt.parents.iter().map(|p| index[p.as_str()]).collect();
        let n_rows: usize = parents.iter().map(|&p| cards[p]).product();
        let mut dense = vec![f64::NAN; n_rows * cards[child]];
        for r in &cpt.rows {
            let mut key = 0;
            for (s, &p) in r.parent_states.iter().zip(&parents) {
                key = key * cards[p] + doc.nodes[p].states.iter().position(|x| x == s).unwrap();
            }
            dense[key * cards[child]..(key + 1) * cards[child]].copy_from_slice(&r.probabilities);
        }
        tables[child] = Some((parents, dense));
    }
    let tables: Vec<_> = tables.into_iter().map(Option::unwrap).collect();

    let mut acc: Vec<Vec<f64>> = cards.iter().map(|&c| vec![0.0; c]).collect();
    let mut state: Vec<usize> = fixed.iter().map(|f| f.unwrap_or(0)).collect();
    let free: Vec<usize> = (0..cards.len()).filter(|&i| fixed[i].is_none()).collect();
    loop {
        let mut p = 1.0;
        for (i, (parents, dense)) in tables.iter().enumerate() {
            let mut key = 0;
            for &j in parents {
                key = key * cards[j] + state[j];
            }
            p *= dense[key * cards[i] + state[i]];
        }
        for (i, a) in acc.iter_mut().enumerate() {
            a[state[i]] += p;
        }
        // odometer over unobserved nodes
        let mut k = 0;
        loop {
            if k == free.len() {
                let z: f64 = acc[0].iter().sum();
                if z.is_nan() || z <= 0.0 {
                    return None;
                }
                return Some(
                    acc.into_iter()
                        .map(|a| a.into_iter().map(|x| x / z).collect())
                        .collect(),
                );
            }
            let v = free[k];
            state[v] += 1;
            if state[v] < cards[v] {
                break;
            }
            state[v] = 0;
            k += 1;
        }
    }
}

/// Mass of the truncated triangular kernel on each partition interval, by Simpson's rule
/// on pieces split at the kernel's kinks (exact for piecewise-linear densities).
pub fn quadrature_masses(cutpoints: &[f64], half_width: f64, centre: f64) -> Vec<f64> {
    let pdf = |x: f64| (1.0 - (x - centre).abs() / half_width).max(0.0);
    let simpson = |a: f64, b: f64| (b - a) / 6.0 * (pdf(a) + 4.0 * pdf((a + b) / 2.0) + pdf(b));
    let mut edges = vec![0.0];
    edges.extend_from_slice(cutpoints);
    edges.push(1.0);
    let kinks = [centre - half_width, centre, centre + half_width];
    let raw: Vec<f64> = edges
        .windows(2)
        .map(|w| {
            let mut pts = vec![w[0]];
            pts.extend(kinks.iter().copied().filter(|&k| k > w[0] && k < w[1]));
            pts.push(w[1]);
            pts.windows(2).map(|p| simpson(p[0], p[1])).sum()
        })
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|m| m / total).collect()
}
