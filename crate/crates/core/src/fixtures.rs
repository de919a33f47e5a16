//! Documents shipped under `fixtures/` at the workspace root, embedded at compile time.

/// Hazard register for the drone delivery use case (11 hazards).
pub const HAZARDS_JSON: &str = include_str!("../../../fixtures/hazards.json");

/// Causal-factor contribution percentages per literature source.
pub const FREQUENCY_TABLE_JSON: &str = include_str!("../../../fixtures/frequency_table.json");

/// Crash-model assembly parameters.
pub const CRASH_SPEC_JSON: &str = include_str!("../../../fixtures/crash_spec.json");

pub const PILOT_ERROR_SCENARIO_JSON: &str = include_str!("../../../fixtures/pilot_error.json");
pub const EXTERNAL_SCENARIO_JSON: &str =
    include_str!("../../../fixtures/scenario_one_external.json");
pub const INTERNAL_SCENARIO_JSON: &str =
    include_str!("../../../fixtures/scenario_two_internal.json");
pub const PRIOR_SCENARIO_JSON: &str = include_str!("../../../fixtures/prior.json");
pub const DIAGNOSTIC_SCENARIO_JSON: &str =
    include_str!("../../../fixtures/diagnose_crash_very_high.json");
