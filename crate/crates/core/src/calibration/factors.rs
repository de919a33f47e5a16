use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CalibrationError;

/// Causal factors contributing to UAV crashes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FactorId {
    PE,
    SCFM,
    WE,
    GL,
    ATMF,
    IAC,
    SAOD,
    MC,
    DCQ,
    ACMF,
    LEP,
}

impl FactorId {
    pub const ALL: [FactorId; 11] = [
        FactorId::PE,
        FactorId::SCFM,
        FactorId::WE,
        FactorId::GL,
        FactorId::ATMF,
        FactorId::IAC,
        FactorId::SAOD,
        FactorId::MC,
        FactorId::DCQ,
        FactorId::ACMF,
        FactorId::LEP,
    ];

    pub fn code(self) -> &'static str {
        match self {
            FactorId::PE => "PE",
            FactorId::SCFM => "SCFM",
            FactorId::WE => "WE",
            FactorId::GL => "GL",
            FactorId::ATMF => "ATMF",
            FactorId::IAC => "IAC",
            FactorId::SAOD => "SAOD",
            FactorId::MC => "MC",
            FactorId::DCQ => "DCQ",
            FactorId::ACMF => "ACMF",
            FactorId::LEP => "LEP",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            FactorId::PE => "Pilot error",
            FactorId::SCFM => "System/component failure or malfunction",
            FactorId::WE => "Weather effects on UAV",
            FactorId::GL => "GPS loss",
            FactorId::ATMF => "Air traffic management failure",
            FactorId::IAC => "Inability to avoid collision",
            FactorId::SAOD => "Security attacks on the drone",
            FactorId::MC => "Mid-air collisions",
            FactorId::DCQ => "Degraded communication quality",
            FactorId::ACMF => "Autopilot controller module failure",
            FactorId::LEP => "Loss of UAV electrical power",
        }
    }
}

impl fmt::Display for FactorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for FactorId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FactorId::ALL
            .into_iter()
            .find(|f| f.code() == s)
            .ok_or_else(|| format!("unknown factor code {s:?}"))
    }
}

/// One literature source and the percentages it reports. Absent factors are not zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub label: String,
    pub values: BTreeMap<FactorId, f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FrequencyTable {
    pub references: Vec<Reference>,
}

impl FrequencyTable {
    /// Populated cells for one factor, in reference order.
    pub fn cells(&self, factor: FactorId) -> impl Iterator<Item = (&str, f64)> + '_ {
        self.references
            .iter()
            .filter_map(move |r| r.values.get(&factor).map(|&v| (r.label.as_str(), v)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serialization is infallible")
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    references: Vec<RawReference>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReference {
    label: String,
    values: BTreeMap<String, f64>,
}

/// Parses `{"references": [{"label": ..., "values": {code: percent}}]}`.
pub fn load_frequency_table(doc: &str) -> Result<FrequencyTable, CalibrationError> {
    let raw: RawTable =
        serde_json::from_str(doc).map_err(|e| CalibrationError::Parse(e.to_string()))?;
    let mut labels = BTreeSet::new();
    let mut references = Vec::with_capacity(raw.references.len());
    for r in raw.references {
        if !labels.insert(r.label.clone()) {
            return Err(CalibrationError::DuplicateReference(r.label));
        }
        let mut values = BTreeMap::new();
        for (code, v) in r.values {
            let factor = code
                .parse::<FactorId>()
                .map_err(|_| CalibrationError::UnknownFactor {
                    label: r.label.clone(),
                    code: code.clone(),
                })?;
            if !(0.0..=100.0).contains(&v) {
                return Err(CalibrationError::Range {
                    label: r.label,
                    factor: code,
                    value: v,
                });
            }
            values.insert(factor, v);
        }
        references.push(Reference {
            label: r.label,
            values,
        });
    }
    Ok(FrequencyTable { references })
}
