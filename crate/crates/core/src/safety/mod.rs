//! Qualitative track: hazard register, risk-matrix scoring and required performance levels.

pub mod classes;
pub mod hazard;
pub mod matrix;
pub mod registry;

pub use classes::{
    Avoidance, Exposure, PerformanceLevel, ProbabilityClass, RiskLevel, Severity, SeverityClass,
    SfpTriple,
};
pub use hazard::{
    drone_system_limits, validate_hazard, HazardRecord, HazardSource, HazardTaxonomy,
    LimitCategory, MeasureCategory, MitigationMeasure, SystemLimits, TaxonomyEntry, Violation,
};
pub use matrix::{plr_lookup, risk_matrix_lookup, RiskMatrix};
pub use registry::{
    registry_load, registry_load_with, registry_to_json, validate_registry, RecordViolation,
    RegistryDocument, RegistryError,
};
