//! Registry documents: `{"hazards": [...]}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::hazard::{validate_hazard, HazardRecord, HazardTaxonomy, Violation};
use super::matrix::RiskMatrix;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegistryDocument {
    pub hazards: Vec<HazardRecord>,
}

/// A violation attributed to a record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordViolation {
    pub id: u32,
    pub violation: Violation,
}

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("malformed registry document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("registry failed validation ({} violation(s))", .0.len())]
    Validation(Vec<RecordViolation>),
}

/// Every violation in a list of records, including duplicate ids.
pub fn validate_registry(
    records: &[HazardRecord],
    matrix: &RiskMatrix,
    taxonomy: &HazardTaxonomy,
) -> Vec<RecordViolation> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for r in records {
        *counts.entry(r.id).or_default() += 1;
    }
    let mut out: Vec<RecordViolation> = counts
        .iter()
        .filter(|(_, &n)| n > 1)
        .map(|(&id, _)| RecordViolation {
            id,
            violation: Violation::DuplicateId,
        })
        .collect();
    for r in records {
        out.extend(
            validate_hazard(r, matrix, taxonomy)
                .into_iter()
                .map(|violation| RecordViolation {
                    id: r.id,
                    violation,
                }),
        );
    }
    out
}

/// Parses and validates a registry with the default matrix and taxonomy.
pub fn registry_load(doc: &str) -> Result<Vec<HazardRecord>, RegistryError> {
    registry_load_with(doc, &RiskMatrix::default(), &HazardTaxonomy::default())
}

pub fn registry_load_with(
    doc: &str,
    matrix: &RiskMatrix,
    taxonomy: &HazardTaxonomy,
) -> Result<Vec<HazardRecord>, RegistryError> {
    let parsed: RegistryDocument = serde_json::from_str(doc)?;
    let violations = validate_registry(&parsed.hazards, matrix, taxonomy);
    if violations.is_empty() {
        Ok(parsed.hazards)
    } else {
        Err(RegistryError::Validation(violations))
    }
}

pub fn registry_to_json(records: &[HazardRecord]) -> String {
    let doc = RegistryDocument {
        hazards: records.to_vec(),
    };
    serde_json::to_string_pretty(&doc).expect("registry serialization is infallible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_loads_eleven_records() {
        let records = registry_load(fixtures::HAZARDS_JSON).unwrap();
        assert_eq!(records.len(), 11);
        assert_eq!(
            records.iter().map(|r| r.id).collect::<Vec<_>>(),
            (1..=11).collect::<Vec<_>>()
        );
    }

    #[test]
    fn empty_list() {
        assert_eq!(registry_load(r#"{"hazards": []}"#).unwrap(), vec![]);
    }

    #[test]
    fn malformed_document() {
        assert!(matches!(
            registry_load("{\"hazards\": 3"),
            Err(RegistryError::Parse(_))
        ));
        assert!(matches!(
            registry_load("{\"records\": []}"),
            Err(RegistryError::Parse(_))
        ));
    }

    #[test]
    fn duplicate_id_named() {
        let mut records = registry_load(fixtures::HAZARDS_JSON).unwrap();
        records[3].id = 3;
        let err = registry_load(&registry_to_json(&records)).unwrap_err();
        match err {
            RegistryError::Validation(v) => {
                assert_eq!(
                    v,
                    vec![RecordViolation {
                        id: 3,
                        violation: Violation::DuplicateId
                    }]
                )
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn fixture_round_trips_bit_identically() {
        let records = registry_load(fixtures::HAZARDS_JSON).unwrap();
        let once = registry_to_json(&records);
        let twice = registry_to_json(&registry_load(&once).unwrap());
        assert_eq!(once, twice);
        assert_eq!(registry_load(&once).unwrap(), records);
    }
}
