use serde::{Deserialize, Serialize};

use super::factors::{FactorId, FrequencyTable};
use super::CalibrationError;

/// How percentages from several references are combined into one prior.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Policy {
    #[default]
    Mean,
    Median,
}

/// `P(factor = YES)`, read as the factor's frequency of contribution to crashes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorPrior {
    pub factor: FactorId,
    pub p_yes: f64,
    pub provenance: Vec<String>,
}

/// One prior per factor, in [`FactorId::ALL`] order.
pub fn derive_priors(
    table: &FrequencyTable,
    policy: Policy,
) -> Result<Vec<FactorPrior>, CalibrationError> {
    FactorId::ALL
        .into_iter()
        .map(|factor| {
            let (labels, mut values): (Vec<String>, Vec<f64>) =
                table.cells(factor).map(|(l, v)| (l.to_string(), v)).unzip();
            if values.is_empty() {
                return Err(CalibrationError::NoDataForFactor(factor));
            }
            let pct = match policy {
                Policy::Mean => values.iter().sum::<f64>() / values.len() as f64,
                Policy::Median => median(&mut values),
            };
            Ok(FactorPrior {
                factor,
                p_yes: pct / 100.0,
                provenance: labels,
            })
        })
        .collect()
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calibration::factors::{load_frequency_table, Reference};
    use crate::fixtures;

    fn prior(ps: &[FactorPrior], f: FactorId) -> &FactorPrior {
        ps.iter().find(|p| p.factor == f).unwrap()
    }

    #[test]
    fn fixture_means() {
        let t = load_frequency_table(fixtures::FREQUENCY_TABLE_JSON).unwrap();
        let ps = derive_priors(&t, Policy::Mean).unwrap();
        assert_eq!(ps.len(), 11);
        // (65 + 11 + 48 + 17 + 17 + 58 + 15) / 7 = 33
        assert!((prior(&ps, FactorId::PE).p_yes - 0.33).abs() < 1e-12);
        assert_eq!(prior(&ps, FactorId::PE).provenance.len(), 7);
        // (18 + 5 + 3.6 + 6 + 4.84) / 5 = 7.488
        assert!((prior(&ps, FactorId::WE).p_yes - 0.07488).abs() < 1e-12);
    }

    #[test]
    fn fixture_medians() {
        let t = load_frequency_table(fixtures::FREQUENCY_TABLE_JSON).unwrap();
        let ps = derive_priors(&t, Policy::Median).unwrap();
        // sorted PE: 11 15 17 17 48 58 65
        assert!((prior(&ps, FactorId::PE).p_yes - 0.17).abs() < 1e-12);
        // DCQ: 11, 14
        assert!((prior(&ps, FactorId::DCQ).p_yes - 0.125).abs() < 1e-12);
    }

    #[test]
    fn single_cell_and_missing_factor() {
        let mut t = FrequencyTable::default();
        let mut values = std::collections::BTreeMap::new();
        for f in FactorId::ALL {
            values.insert(f, 40.0);
        }
        values.remove(&FactorId::MC);
        t.references.push(Reference {
            label: "only".into(),
            values,
        });
        assert_eq!(
            derive_priors(&t, Policy::Mean).unwrap_err(),
            CalibrationError::NoDataForFactor(FactorId::MC)
        );
        t.references[0].values.insert(FactorId::MC, 12.5);
        let ps = derive_priors(&t, Policy::Median).unwrap();
        assert_eq!(prior(&ps, FactorId::MC).p_yes, 0.125);
        assert_eq!(
            prior(&ps, FactorId::MC).provenance,
            vec!["only".to_string()]
        );
    }
}
