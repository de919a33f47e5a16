//! Shared inputs for the criterion benchmarks.

use aerorisk_core::calibration::{default_crash_model, Policy};
use aerorisk_core::BayesianNetwork;

pub fn crash_model() -> BayesianNetwork {
    default_crash_model(Policy::Mean).expect("fixture model assembles")
}
