//! What-if scenarios over a built network, scenario comparison and reports.

pub mod report;
pub mod run;

pub use report::{emit_report, ReportFormat};
pub use run::{
    compare_scenarios, diagnostic_query, run_scenario, Comparison, ComparisonRow, Direction,
    Scenario, ScenarioError, ScenarioResult,
};
