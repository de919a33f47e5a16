//! Discrete Bayesian networks: representation, CPT generators, exact inference and
//! one-way sensitivity analysis.

pub mod elimination;
pub mod enumeration;
pub mod factor;
pub mod generators;
pub mod inference;
pub mod network;
pub mod random;
pub mod tornado;

pub use elimination::{probability_of_evidence, variable_elimination_posterior};
pub use enumeration::joint_enumeration_posterior;
pub use generators::{
    noisy_or_cpt, ranked_aggregation_cpt, weighted_activation, CptError, RankedKernel,
    DEFAULT_HALF_WIDTH,
};
pub use inference::{Distribution, Evidence, InferenceError};
pub use network::{
    build_network, BayesianNetwork, Cpt, CptRow, NetworkDocument, NetworkError, NodeKind, NodeSpec,
    NORMALIZATION_TOLERANCE,
};
pub use tornado::{sensitivity_tornado, StateValue, TornadoReport, TornadoRow};
