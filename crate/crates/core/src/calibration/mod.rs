//! Causal-factor frequency data, observable priors and assembly of the crash model.

pub mod factors;
pub mod model;
pub mod priors;

use thiserror::Error;

use crate::bn::{CptError, NetworkError};

pub use factors::{load_frequency_table, FactorId, FrequencyTable, Reference};
pub use model::{
    assemble_crash_model, default_crash_model, Aggregation, CrashModelSpec, FactorGroup, TargetRow,
    TargetTable, CRASH_NODE, CRASH_STATES, EXTERNAL_NODE, INTERMEDIATE_STATES, INTERNAL_NODE,
};
pub use priors::{derive_priors, FactorPrior, Policy};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CalibrationError {
    #[error("malformed document: {0}")]
    Parse(String),
    #[error("reference {label:?}: {factor} = {value} is outside [0, 100]")]
    Range {
        label: String,
        factor: String,
        value: f64,
    },
    #[error("reference {label:?}: unknown factor code {code:?}")]
    UnknownFactor { label: String, code: String },
    #[error("reference {0:?} appears more than once")]
    DuplicateReference(String),
    #[error("no data for factor {0}")]
    NoDataForFactor(FactorId),
    #[error("no prior supplied for factor {0}")]
    Coverage(FactorId),
    #[error("invalid crash model spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Cpt(#[from] CptError),
    #[error(transparent)]
    Network(#[from] NetworkError),
}
