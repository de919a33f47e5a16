//! Ordered qualitative scales used by the hazard registry.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Likelihood class of a hazardous event, least likely first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ProbabilityClass {
    Improbable,
    Remote,
    Occasional,
    Probable,
    Frequent,
}

impl ProbabilityClass {
    pub const ALL: [ProbabilityClass; 5] = [
        ProbabilityClass::Improbable,
        ProbabilityClass::Remote,
        ProbabilityClass::Occasional,
        ProbabilityClass::Probable,
        ProbabilityClass::Frequent,
    ];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Severity of the consequence, mildest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SeverityClass {
    /// Mission degradation only.
    Negligible,
    /// Damage to the drone itself.
    Marginal,
    /// Damage to third-party assets.
    Critical,
    /// Harm, serious injury or death.
    Catastrophic,
}

impl SeverityClass {
    pub const ALL: [SeverityClass; 4] = [
        SeverityClass::Negligible,
        SeverityClass::Marginal,
        SeverityClass::Critical,
        SeverityClass::Catastrophic,
    ];

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RiskLevel {
    Low,
    Medium,
    Serious,
    High,
}

/// Required performance level of a safety function, `a` (lowest) to `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PerformanceLevel {
    A,
    B,
    C,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Severity {
    /// Slight, normally reversible injury.
    S1,
    /// Serious, irreversible injury or death.
    S2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Exposure {
    /// Seldom or short exposure.
    F1,
    /// Frequent or continuous exposure.
    F2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Avoidance {
    /// Avoidance possible under specific conditions.
    P1,
    /// Scarcely possible.
    P2,
}

/// Risk-graph parameters for one safety function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SfpTriple {
    pub s: Severity,
    pub f: Exposure,
    pub p: Avoidance,
}

impl SfpTriple {
    pub const fn new(s: Severity, f: Exposure, p: Avoidance) -> Self {
        SfpTriple { s, f, p }
    }

    /// All eight combinations, in risk-graph branch order.
    pub fn all() -> impl Iterator<Item = SfpTriple> {
        [Severity::S1, Severity::S2].into_iter().flat_map(|s| {
            [Exposure::F1, Exposure::F2].into_iter().flat_map(move |f| {
                [Avoidance::P1, Avoidance::P2]
                    .into_iter()
                    .map(move |p| SfpTriple::new(s, f, p))
            })
        })
    }
}

macro_rules! display_via_debug {
    ($($t:ty),*) => {
        $(impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Debug::fmt(self, f)
            }
        })*
    };
}

display_via_debug!(
    ProbabilityClass,
    SeverityClass,
    RiskLevel,
    Severity,
    Exposure,
    Avoidance
);

impl fmt::Display for PerformanceLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            PerformanceLevel::A => "a",
            PerformanceLevel::B => "b",
            PerformanceLevel::C => "c",
            PerformanceLevel::D => "d",
            PerformanceLevel::E => "e",
        };
        f.write_str(c)
    }
}

impl fmt::Display for SfpTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.s, self.f, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scales_are_ordered() {
        assert!(ProbabilityClass::ALL.windows(2).all(|w| w[0] < w[1]));
        assert!(SeverityClass::ALL.windows(2).all(|w| w[0] < w[1]));
        assert!(RiskLevel::Low < RiskLevel::Medium && RiskLevel::Serious < RiskLevel::High);
        assert!(PerformanceLevel::A < PerformanceLevel::E);
    }

    #[test]
    fn canonical_names_on_the_wire() {
        assert_eq!(
            serde_json::to_string(&PerformanceLevel::C).unwrap(),
            "\"c\""
        );
        assert_eq!(serde_json::to_string(&Severity::S1).unwrap(), "\"S1\"");
        assert_eq!(
            serde_json::to_string(&RiskLevel::Serious).unwrap(),
            "\"Serious\""
        );
        assert_eq!(
            serde_json::to_string(&SeverityClass::Catastrophic).unwrap(),
            "\"Catastrophic\""
        );
    }

    #[test]
    fn eight_sfp_combinations() {
        assert_eq!(SfpTriple::all().count(), 8);
    }
}
