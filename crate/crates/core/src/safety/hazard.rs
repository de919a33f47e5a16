//! Hazard records, the hazard-source taxonomy and per-record validation.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::classes::{PerformanceLevel, ProbabilityClass, RiskLevel, SeverityClass, SfpTriple};
use super::matrix::{plr_lookup, RiskMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HazardSource {
    External,
    Internal,
}

/// The three risk-reduction steps, applied in this order of preference.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MeasureCategory {
    InherentlySafeDesign,
    Safeguarding,
    InformationForUse,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MitigationMeasure {
    pub description: String,
    pub category: MeasureCategory,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sfp: Option<SfpTriple>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plr: Option<PerformanceLevel>,
}

impl MitigationMeasure {
    pub fn new(description: impl Into<String>, category: MeasureCategory) -> Self {
        MitigationMeasure {
            description: description.into(),
            category,
            sfp: None,
            plr: None,
        }
    }

    /// A safeguarding measure implemented as a safety function.
    pub fn safeguard(
        description: impl Into<String>,
        sfp: SfpTriple,
        plr: PerformanceLevel,
    ) -> Self {
        MitigationMeasure {
            description: description.into(),
            category: MeasureCategory::Safeguarding,
            sfp: Some(sfp),
            plr: Some(plr),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HazardRecord {
    pub id: u32,
    pub name: String,
    pub source: HazardSource,
    pub hazard_type: String,
    pub element: String,
    pub cause: String,
    pub consequence: String,
    pub probability: ProbabilityClass,
    pub severity: SeverityClass,
    pub risk_level: RiskLevel,
    pub measures: Vec<MitigationMeasure>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LimitCategory {
    Physical,
    Temporal,
    Environmental,
    Behavioral,
    Networking,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemLimits {
    pub category: LimitCategory,
    pub description: String,
}

/// Operating limits of the delivery drone, one entry per category.
pub fn drone_system_limits() -> Vec<SystemLimits> {
    let rows = [
        (LimitCategory::Physical, "Maximum take-off weight, maximum speed and maximum/minimum height."),
        (
            LimitCategory::Temporal,
            "Maximum time of flight, response time of the commands or acquisition time of the sensors, battery degradation over time, battery life.",
        ),
        (
            LimitCategory::Environmental,
            "Weather conditions (wind speed, ambient light, or dust/rain presence), the minimum distance from populated areas or from airports.",
        ),
        (LimitCategory::Behavioral, "Actions performed by the pilot (both autonomous and manual)."),
        (
            LimitCategory::Networking,
            "Network delays, jitters, available bandwidths, latency, link availability and traffic congestion.",
        ),
    ];
    rows.into_iter()
        .map(|(category, d)| SystemLimits {
            category,
            description: d.to_string(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaxonomyEntry {
    pub source: HazardSource,
    pub hazard_type: String,
    pub examples: String,
}

/// Admissible (source, hazard type) pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HazardTaxonomy {
    entries: Vec<TaxonomyEntry>,
}

impl HazardTaxonomy {
    pub fn new(entries: Vec<TaxonomyEntry>) -> Self {
        HazardTaxonomy { entries }
    }

    pub fn entries(&self) -> &[TaxonomyEntry] {
        &self.entries
    }

    pub fn contains(&self, source: HazardSource, hazard_type: &str) -> bool {
        self.entries
            .iter()
            .any(|e| e.source == source && e.hazard_type == hazard_type)
    }

    /// The drone hazard-source taxonomy.
    ///
    /// The last three entries are type labels that the shipped register uses under a
    /// different source (or a shortened name) than the base taxonomy lists them.
    pub fn drone() -> Self {
        use HazardSource::{External, Internal};
        let rows: [(HazardSource, &str, &str); 18] = [
            (External, "Interference", "Electromagnetic interference (EMI), humans (eavesdropping of radio signals), communication interference."),
            (External, "Environmental conditions", "Wind, temperature, atmospheric attenuation, icing, precipitation, visibility (day or night)."),
            (External, "Obstacles", "Fixed obstacles (trees, electric cables, buildings), and dynamic obstacles (bird, cars)."),
            (External, "Navigational Environment", "GPS signal loss/error, GPS spoofing, ADS-B signal inaccuracy, navigation system error, attitude error, erroneous waypoint."),
            (External, "Air traffic environment", "Another aircraft in close proximity, classes of airspace that may be flown nearby."),
            (External, "Electrical environment", "Man-made or natural RF fields such as High Intensity Radio Transmission Areas (HIRTAs), electrostatic phenomena."),
            (External, "Communication", "Network congestion, network unavailability/delays, network jitters."),
            (External, "Human factor", "Lack of safety culture awareness, security attacks (on the ground control station, on the datalink, on UAV), pilot error."),
            (Internal, "Mechanical", "Mechanical fastener failure, actuation failure, motor."),
            (Internal, "Thermal", "Freeze, explosions."),
            (Internal, "Electronic", "Power loss, propulsion failure, saturation, overflows."),
            (Internal, "Algorithmic", "Verification error, decision-making error, delayed responses, infinite loops."),
            (Internal, "Technical factor", "Battery depletion, faulty battery cell, power loss, inherent technical flaws, technical malfunction, inappropriate charge cycle, loss of control, loss of transmission."),
            (Internal, "Software", "Control system failure, flight control system / verification error, autopilot error, system operation error, bugs in code, process errors, vision system failure."),
            (Internal, "Hardware", "CPU error, avionics hardware, flight sensors."),
            (External, "Electronic", "GPS device defect or external signal loss affecting onboard electronics."),
            (External, "Software", "Attacks on onboard or ground software through insecure protocols."),
            (Internal, "Technical", "Short form of the technical-factor type."),
        ];
        HazardTaxonomy::new(
            rows.into_iter()
                .map(|(source, t, ex)| TaxonomyEntry {
                    source,
                    hazard_type: t.to_string(),
                    examples: ex.to_string(),
                })
                .collect(),
        )
    }
}

impl Default for HazardTaxonomy {
    fn default() -> Self {
        HazardTaxonomy::drone()
    }
}

/// One failed invariant on a hazard record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Violation {
    InvalidId,
    RiskLevelMismatch {
        expected: RiskLevel,
        found: RiskLevel,
    },
    UnknownHazardType {
        source: HazardSource,
        hazard_type: String,
    },
    /// A safeguard without S/F/P or PLr.
    MissingSafetyFunction {
        measure: usize,
    },
    /// S/F/P or PLr on a measure that is not a safeguard.
    UnexpectedSafetyFunction {
        measure: usize,
    },
    PlrMismatch {
        measure: usize,
        expected: PerformanceLevel,
        found: PerformanceLevel,
    },
    DuplicateId,
}

impl Violation {
    /// Name of the offending field.
    pub fn field(&self) -> &'static str {
        match self {
            Violation::InvalidId | Violation::DuplicateId => "id",
            Violation::RiskLevelMismatch { .. } => "risk_level",
            Violation::UnknownHazardType { .. } => "hazard_type",
            Violation::MissingSafetyFunction { .. }
            | Violation::UnexpectedSafetyFunction { .. } => "measures.sfp",
            Violation::PlrMismatch { .. } => "measures.plr",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::InvalidId => write!(f, "id: must be a positive integer"),
            Violation::DuplicateId => write!(f, "id: appears more than once in the registry"),
            Violation::RiskLevelMismatch { expected, found } => {
                write!(f, "risk_level: expected {expected}, found {found}")
            }
            Violation::UnknownHazardType {
                source,
                hazard_type,
            } => {
                write!(
                    f,
                    "hazard_type: ({source:?}, {hazard_type:?}) is not in the taxonomy"
                )
            }
            Violation::MissingSafetyFunction { measure } => {
                write!(
                    f,
                    "measures[{measure}]: safeguard requires both sfp and plr"
                )
            }
            Violation::UnexpectedSafetyFunction { measure } => {
                write!(f, "measures[{measure}]: only safeguards carry sfp/plr")
            }
            Violation::PlrMismatch {
                measure,
                expected,
                found,
            } => {
                write!(
                    f,
                    "measures[{measure}].plr: expected {expected}, found {found}"
                )
            }
        }
    }
}

/// Checks every per-record invariant. Registry-level checks (id uniqueness) live in
/// [`super::registry`].
pub fn validate_hazard(
    h: &HazardRecord,
    matrix: &RiskMatrix,
    taxonomy: &HazardTaxonomy,
) -> Vec<Violation> {
    let mut out = Vec::new();
    if h.id == 0 {
        out.push(Violation::InvalidId);
    }
    if !taxonomy.contains(h.source, &h.hazard_type) {
        out.push(Violation::UnknownHazardType {
            source: h.source,
            hazard_type: h.hazard_type.clone(),
        });
    }
    let expected = matrix.lookup(h.probability, h.severity);
    if expected != h.risk_level {
        out.push(Violation::RiskLevelMismatch {
            expected,
            found: h.risk_level,
        });
    }
    for (i, m) in h.measures.iter().enumerate() {
        match (m.category, m.sfp, m.plr) {
            (MeasureCategory::Safeguarding, Some(sfp), Some(plr)) => {
                let expected = plr_lookup(sfp);
                if expected != plr {
                    out.push(Violation::PlrMismatch {
                        measure: i,
                        expected,
                        found: plr,
                    });
                }
            }
            (MeasureCategory::Safeguarding, _, _) => {
                out.push(Violation::MissingSafetyFunction { measure: i })
            }
            (_, None, None) => {}
            (_, _, _) => out.push(Violation::UnexpectedSafetyFunction { measure: i }),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::safety::classes::{Avoidance, Exposure, Severity};

    fn gps_loss() -> HazardRecord {
        HazardRecord {
            id: 2,
            name: "Permanent Loss of GPS during flight".into(),
            source: HazardSource::External,
            hazard_type: "Electronic".into(),
            element: "UAV".into(),
            cause: "Defect of GPS device, loss of GPS signal".into(),
            consequence: "Control loss, collision with UAS, crashing to the ground".into(),
            probability: ProbabilityClass::Remote,
            severity: SeverityClass::Catastrophic,
            risk_level: RiskLevel::Serious,
            measures: vec![
                MitigationMeasure::new(
                    "Use high-quality GPS devices (e.g. RTK)",
                    MeasureCategory::InherentlySafeDesign,
                ),
                MitigationMeasure::new(
                    "Minimize navigation paths over urban areas and highways",
                    MeasureCategory::InherentlySafeDesign,
                ),
            ],
        }
    }

    fn check(h: &HazardRecord) -> Vec<Violation> {
        validate_hazard(h, &RiskMatrix::default(), &HazardTaxonomy::drone())
    }

    #[test]
    fn gps_loss_is_consistent() {
        assert_eq!(check(&gps_loss()), vec![]);
    }

    #[test]
    fn wrong_risk_level() {
        let mut h = gps_loss();
        h.risk_level = RiskLevel::Low;
        assert_eq!(
            check(&h),
            vec![Violation::RiskLevelMismatch {
                expected: RiskLevel::Serious,
                found: RiskLevel::Low
            }]
        );
    }

    #[test]
    fn wrong_plr() {
        let mut h = gps_loss();
        h.measures.push(MitigationMeasure::safeguard(
            "Parachute",
            SfpTriple::new(Severity::S2, Exposure::F1, Avoidance::P2),
            PerformanceLevel::A,
        ));
        let v = check(&h);
        assert_eq!(
            v,
            vec![Violation::PlrMismatch {
                measure: 2,
                expected: PerformanceLevel::D,
                found: PerformanceLevel::A
            }]
        );
        assert_eq!(v[0].field(), "measures.plr");
    }

    #[test]
    fn safety_function_presence_rule() {
        let mut h = gps_loss();
        h.measures[0].plr = Some(PerformanceLevel::B);
        h.measures.push(MitigationMeasure::new(
            "Airbag",
            MeasureCategory::Safeguarding,
        ));
        assert_eq!(
            check(&h),
            vec![
                Violation::UnexpectedSafetyFunction { measure: 0 },
                Violation::MissingSafetyFunction { measure: 2 }
            ]
        );
    }

    #[test]
    fn unknown_taxonomy_pair_and_zero_id() {
        let mut h = gps_loss();
        h.id = 0;
        h.source = HazardSource::Internal;
        h.hazard_type = "Weather".into();
        let v = check(&h);
        assert_eq!(v.len(), 2);
        assert_eq!(v[0], Violation::InvalidId);
        assert_eq!(v[1].field(), "hazard_type");
    }

    #[test]
    fn five_limit_categories() {
        let limits = drone_system_limits();
        assert_eq!(limits.len(), 5);
        assert_eq!(limits[4].category, LimitCategory::Networking);
    }
}
