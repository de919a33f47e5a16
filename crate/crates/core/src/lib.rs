//! Risk assessment for UAV missions.
//!
//! Two complementary tracks share this crate:
//!
//! * [`safety`]: a qualitative hazard register scored with a risk matrix, with required
//!   performance levels for safeguarding functions taken from the S/F/P risk graph.
//! * [`bn`], [`calibration`], [`scenario`]: a discrete Bayesian crash model assembled
//!   from causal-factor frequencies, queried exactly by variable elimination (checked
//!   against full joint enumeration), with what-if scenarios and tornado sensitivity.

pub mod bn;
pub mod calibration;
pub mod fixtures;
pub mod safety;
pub mod scenario;

pub use bn::{
    build_network, joint_enumeration_posterior, sensitivity_tornado,
    variable_elimination_posterior, BayesianNetwork, Distribution, Evidence, InferenceError,
    NetworkError,
};
pub use calibration::{assemble_crash_model, default_crash_model, CrashModelSpec, Policy};
pub use safety::{plr_lookup, registry_load, risk_matrix_lookup, validate_hazard, HazardRecord};
pub use scenario::{emit_report, run_scenario, ReportFormat, Scenario, ScenarioResult};
