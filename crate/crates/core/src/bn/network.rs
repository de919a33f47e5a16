use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Row-sum tolerance for CPT rows and returned distributions.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Role of a node in the model. Metadata only; inference ignores it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NodeKind {
    Observable,
    Intermediate,
    Target,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeSpec {
    pub name: String,
    pub states: Vec<String>,
    pub kind: NodeKind,
}

impl NodeSpec {
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        states: impl IntoIterator<Item = S>,
        kind: NodeKind,
    ) -> Self {
        NodeSpec {
            name: name.into(),
            states: states.into_iter().map(Into::into).collect(),
            kind,
        }
    }

    /// A two-state node with states `NO`, `YES`.
    pub fn binary(name: impl Into<String>, kind: NodeKind) -> Self {
        NodeSpec::new(name, ["NO", "YES"], kind)
    }

    pub fn state_index(&self, state: &str) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CptRow {
    pub parent_states: Vec<String>,
    pub probabilities: Vec<f64>,
}

/// Conditional probability table of `child` given `parents`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cpt {
    pub child: String,
    pub parents: Vec<String>,
    pub rows: Vec<CptRow>,
}

impl Cpt {
    /// A root-node table holding a single prior row.
    pub fn prior(child: impl Into<String>, probabilities: Vec<f64>) -> Self {
        Cpt {
            child: child.into(),
            parents: Vec::new(),
            rows: vec![CptRow {
                parent_states: Vec::new(),
                probabilities,
            }],
        }
    }

    /// Row for a parent assignment given by state names, if present.
    pub fn row(&self, parent_states: &[&str]) -> Option<&[f64]> {
        self.rows
            .iter()
            .find(|r| {
                r.parent_states
                    .iter()
                    .map(String::as_str)
                    .eq(parent_states.iter().copied())
            })
            .map(|r| r.probabilities.as_slice())
    }
}

/// Serialized network: `{"nodes": [...], "cpts": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDocument {
    pub nodes: Vec<NodeSpec>,
    pub cpts: Vec<Cpt>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetworkError {
    #[error("duplicate node name {0:?}")]
    DuplicateNode(String),
    #[error("node {0:?} must have at least two states")]
    TooFewStates(String),
    #[error("node {node:?} lists state {state:?} twice")]
    DuplicateState { node: String, state: String },
    #[error("{context} refers to unknown node {name:?}")]
    DanglingReference { context: String, name: String },
    #[error("cpt of {child:?} refers to unknown state {state:?} of {node:?}")]
    UnknownState {
        child: String,
        node: String,
        state: String,
    },
    #[error("node {0:?} has no cpt")]
    MissingCpt(String),
    #[error("node {0:?} has more than one cpt")]
    DuplicateCpt(String),
    #[error("cpt of {child:?}: {detail}")]
    Shape { child: String, detail: String },
    #[error("cpt of {child:?}, row {row:?}: probability {value} outside [0, 1]")]
    InvalidProbability {
        child: String,
        row: Vec<String>,
        value: f64,
    },
    #[error("cpt of {child:?}, row {row:?}: sums to {sum}, not 1")]
    Normalization {
        child: String,
        row: Vec<String>,
        sum: f64,
    },
    #[error("cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("malformed network document: {0}")]
    Parse(String),
}

/// Validated, immutable discrete Bayesian network.
///
/// CPTs are stored flattened: parent assignments in mixed-radix order with the last
/// parent varying fastest, each followed by the child's state probabilities.
#[derive(Clone, Debug, PartialEq)]
pub struct BayesianNetwork {
    nodes: Vec<NodeSpec>,
    index: HashMap<String, usize>,
    parents: Vec<Vec<usize>>,
    tables: Vec<Vec<f64>>,
    topo: Vec<usize>,
}

/// Validates nodes and CPTs and builds the network.
pub fn build_network(
    nodes: Vec<NodeSpec>,
    cpts: Vec<Cpt>,
) -> Result<BayesianNetwork, NetworkError> {
    let mut index = HashMap::with_capacity(nodes.len());
    for (i, n) in nodes.iter().enumerate() {
        if index.insert(n.name.clone(), i).is_some() {
            return Err(NetworkError::DuplicateNode(n.name.clone()));
        }
        if n.states.len() < 2 {
            return Err(NetworkError::TooFewStates(n.name.clone()));
        }
        let mut seen = HashSet::new();
        for s in &n.states {
            if !seen.insert(s.as_str()) {
                return Err(NetworkError::DuplicateState {
                    node: n.name.clone(),
                    state: s.clone(),
                });
            }
        }
    }

    let mut slot: Vec<Option<Cpt>> = vec![None; nodes.len()];
    for cpt in cpts {
        let Some(&i) = index.get(&cpt.child) else {
            return Err(NetworkError::DanglingReference {
                context: "cpt child".into(),
                name: cpt.child,
            });
        };
        if slot[i].is_some() {
            return Err(NetworkError::DuplicateCpt(cpt.child));
        }
        slot[i] = Some(cpt);
    }

    let mut parents = Vec::with_capacity(nodes.len());
    let mut tables = Vec::with_capacity(nodes.len());
    for (i, cpt) in slot.into_iter().enumerate() {
        let cpt = cpt.ok_or_else(|| NetworkError::MissingCpt(nodes[i].name.clone()))?;
        let (p, t) = resolve_cpt(&nodes, &index, i, cpt)?;
        parents.push(p);
        tables.push(t);
    }

    let topo = topological_order(&nodes, &parents)?;
    Ok(BayesianNetwork {
        nodes,
        index,
        parents,
        tables,
        topo,
    })
}

fn resolve_cpt(
    nodes: &[NodeSpec],
    index: &HashMap<String, usize>,
    child: usize,
    cpt: Cpt,
) -> Result<(Vec<usize>, Vec<f64>), NetworkError> {
    let child_name = &nodes[child].name;
    let shape = |detail: String| NetworkError::Shape {
        child: child_name.clone(),
        detail,
    };

    let mut parent_ids = Vec::with_capacity(cpt.parents.len());
    for p in &cpt.parents {
        let &pi = index
            .get(p)
            .ok_or_else(|| NetworkError::DanglingReference {
                context: format!("cpt of {child_name:?}"),
                name: p.clone(),
            })?;
        if parent_ids.contains(&pi) {
            return Err(shape(format!("parent {p:?} listed twice")));
        }
        parent_ids.push(pi);
    }

    let cards: Vec<usize> = parent_ids.iter().map(|&p| nodes[p].states.len()).collect();
    let n_rows: usize = cards.iter().product();
    let width = nodes[child].states.len();
    let mut table = vec![f64::NAN; n_rows * width];
    let mut filled = vec![false; n_rows];

    for row in &cpt.rows {
        if row.parent_states.len() != parent_ids.len() {
            return Err(shape(format!(
                "row {:?} has {} parent states, expected {}",
                row.parent_states,
                row.parent_states.len(),
                parent_ids.len()
            )));
        }
        let mut r = 0;
        for ((state, &p), &card) in row.parent_states.iter().zip(&parent_ids).zip(&cards) {
            let s = nodes[p]
                .state_index(state)
                .ok_or_else(|| NetworkError::UnknownState {
                    child: child_name.clone(),
                    node: nodes[p].name.clone(),
                    state: state.clone(),
                })?;
            r = r * card + s;
        }
        if filled[r] {
            return Err(shape(format!(
                "row {:?} appears more than once",
                row.parent_states
            )));
        }
        if row.probabilities.len() != width {
            return Err(shape(format!(
                "row {:?} has {} probabilities, child has {} states",
                row.parent_states,
                row.probabilities.len(),
                width
            )));
        }
        if let Some(&bad) = row.probabilities.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(NetworkError::InvalidProbability {
                child: child_name.clone(),
                row: row.parent_states.clone(),
                value: bad,
            });
        }
        let sum: f64 = row.probabilities.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(NetworkError::Normalization {
                child: child_name.clone(),
                row: row.parent_states.clone(),
                sum,
            });
        }
        filled[r] = true;
        table[r * width..(r + 1) * width].copy_from_slice(&row.probabilities);
    }

    if let Some(missing) = filled.iter().position(|f| !f) {
        let states = decode(missing, &cards)
            .into_iter()
            .zip(&parent_ids)
            .map(|(s, &p)| nodes[p].states[s].clone())
            .collect::<Vec<_>>();
        return Err(shape(format!("missing row {states:?}")));
    }
    Ok((parent_ids, table))
}

/// Mixed-radix decode, last position fastest.
pub(crate) fn decode(mut index: usize, cards: &[usize]) -> Vec<usize> {
    let mut out = vec![0; cards.len()];
    for (slot, &c) in out.iter_mut().zip(cards).rev() {
        *slot = index % c;
        index /= c;
    }
    out
}

fn topological_order(
    nodes: &[NodeSpec],
    parents: &[Vec<usize>],
) -> Result<Vec<usize>, NetworkError> {
    let n = nodes.len();
    let mut children = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    for (c, ps) in parents.iter().enumerate() {
        indegree[c] = ps.len();
        for &p in ps {
            children[p].push(c);
        }
    }
    let mut ready: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).rev().collect();
    let mut order = Vec::with_capacity(n);
    while let Some(i) = ready.pop() {
        order.push(i);
        for &c in children[i].iter().rev() {
            indegree[c] -= 1;
            if indegree[c] == 0 {
                ready.push(c);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Walk parent edges from a node still inside the cyclic remainder until one repeats.
    let remaining: HashSet<usize> = (0..n).filter(|i| indegree[*i] > 0).collect();
    let start = *remaining
        .iter()
        .min()
        .expect("remaining nodes form a cycle");
    let mut path = vec![start];
    let mut cur = start;
    loop {
        cur = *parents[cur]
            .iter()
            .find(|p| remaining.contains(p))
            .expect("every node in a cyclic remainder has a cyclic parent");
        if let Some(pos) = path.iter().position(|&x| x == cur) {
            let mut cycle: Vec<String> = path[pos..]
                .iter()
                .rev()
                .map(|&i| nodes[i].name.clone())
                .collect();
            cycle.push(cycle[0].clone());
            return Err(NetworkError::Cycle(cycle));
        }
        path.push(cur);
    }
}

impl BayesianNetwork {
    pub fn from_document(doc: NetworkDocument) -> Result<Self, NetworkError> {
        build_network(doc.nodes, doc.cpts)
    }

    pub fn from_json(json: &str) -> Result<Self, NetworkError> {
        let doc: NetworkDocument =
            serde_json::from_str(json).map_err(|e| NetworkError::Parse(e.to_string()))?;
        Self::from_document(doc)
    }

    /// Document form with rows in canonical order.
    pub fn to_document(&self) -> NetworkDocument {
        NetworkDocument {
            nodes: self.nodes.clone(),
            cpts: (0..self.len()).map(|i| self.cpt(i)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document())
            .expect("network serialization is infallible")
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[NodeSpec] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &NodeSpec {
        &self.nodes[i]
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn node_by_name(&self, name: &str) -> Option<&NodeSpec> {
        self.node_index(name).map(|i| &self.nodes[i])
    }

    pub fn cardinality(&self, i: usize) -> usize {
        self.nodes[i].states.len()
    }

    pub fn parents(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    pub fn children(&self, i: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&c| self.parents[c].contains(&i))
            .collect()
    }

    /// Node indices, parents before children.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// Flattened CPT of node `i` (see type docs for layout).
    pub fn table(&self, i: usize) -> &[f64] {
        &self.tables[i]
    }

    /// `P(node i = state | parents)` under a full assignment indexed by node.
    pub fn local_probability(&self, i: usize, assignment: &[usize]) -> f64 {
        let mut row = 0;
        for &p in &self.parents[i] {
            row = row * self.cardinality(p) + assignment[p];
        }
        self.tables[i][row * self.cardinality(i) + assignment[i]]
    }

    /// CPT of node `i` in document form.
    pub fn cpt(&self, i: usize) -> Cpt {
        let cards: Vec<usize> = self.parents[i]
            .iter()
            .map(|&p| self.cardinality(p))
            .collect();
        let width = self.cardinality(i);
        let n_rows: usize = cards.iter().product();
        let rows = (0..n_rows)
            .map(|r| CptRow {
                parent_states: decode(r, &cards)
                    .into_iter()
                    .zip(&self.parents[i])
                    .map(|(s, &p)| self.nodes[p].states[s].clone())
                    .collect(),
                probabilities: self.tables[i][r * width..(r + 1) * width].to_vec(),
            })
            .collect();
        Cpt {
            child: self.nodes[i].name.clone(),
            parents: self.parents[i]
                .iter()
                .map(|&p| self.nodes[p].name.clone())
                .collect(),
            rows,
        }
    }

    /// Whether `a` is a proper ancestor of `b`.
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let mut stack = self.parents[b].clone();
        let mut seen = vec![false; self.len()];
        while let Some(x) = stack.pop() {
            if x == a {
                return true;
            }
            if !std::mem::replace(&mut seen[x], true) {
                stack.extend_from_slice(&self.parents[x]);
            }
        }
        false
    }

    /// The given nodes together with all their ancestors.
    pub fn ancestral_closure(&self, roots: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut keep = vec![false; self.len()];
        let mut stack: Vec<usize> = roots.into_iter().collect();
        while let Some(x) = stack.pop() {
            if !std::mem::replace(&mut keep[x], true) {
                stack.extend_from_slice(&self.parents[x]);
            }
        }
        keep
    }

    /// Size of the full joint state space, saturating.
    pub fn joint_size(&self) -> u128 {
        self.nodes
            .iter()
            .fold(1u128, |acc, n| acc.saturating_mul(n.states.len() as u128))
    }

    /// Node name to state list, for diagnostics.
    pub fn state_map(&self) -> BTreeMap<&str, &[String]> {
        self.nodes
            .iter()
            .map(|n| (n.name.as_str(), n.states.as_slice()))
            .collect()
    }
}
