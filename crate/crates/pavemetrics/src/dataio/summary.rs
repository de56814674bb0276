//! Per-variable descriptive summaries in the layout of the published
//! descriptive-statistics table, plus mean and n.

use pavemetrics_core::stats::descriptive_stats;
use pavemetrics_core::PavementType;

use super::{DataError, LinkedObservation};

/// Summary for one variable of one pavement type. Statistics are NaN when
/// fewer than two values are present; renderers emit them as empty/null.
#[derive(Debug, Clone, PartialEq)]
pub struct VariableSummary {
    pub variable: &'static str,
    pub unit: &'static str,
    pub n: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub sample_std: f64,
}

/// Summarizes the observations of one pavement type across the eight
/// model variables. `log10_aadt` is computed from the stored raw AADT,
/// never stored independently.
pub fn summarize(
    rows: &[LinkedObservation],
    pavement_type: PavementType,
) -> Result<Vec<VariableSummary>, DataError> {
    let of_type: Vec<&LinkedObservation> = rows
        .iter()
        .filter(|r| r.pavement_type == pavement_type)
        .collect();
    if of_type.len() < 2 {
        return Err(DataError::InsufficientData {
            required: 2,
            available: of_type.len(),
        });
    }

    let collect = |f: &dyn Fn(&LinkedObservation) -> Option<f64>| -> Vec<f64> {
        of_type.iter().filter_map(|r| f(r)).collect()
    };

    let columns: [(&'static str, &'static str, Vec<f64>); 8] = [
        ("psi", "-", collect(&|r| r.observation.measured_psi)),
        ("pdi", "-", collect(&|r| r.observation.measured_pdi)),
        ("pqi", "-", collect(&|r| r.observation.measured_pqi)),
        ("iri", "inch/mile", collect(&|r| r.observation.measured_iri)),
        (
            "log10_aadt",
            "log10(veh/d)",
            collect(&|r| Some(libm::log10(r.observation.aadt))),
        ),
        ("ffs", "mph", collect(&|r| Some(r.observation.ffs))),
        (
            "precipitation",
            "per year",
            collect(&|r| Some(r.observation.precipitation)),
        ),
        (
            "temperature",
            "degF",
            collect(&|r| Some(r.observation.temperature)),
        ),
    ];

    Ok(columns
        .into_iter()
        .map(
            |(variable, unit, values)| match descriptive_stats(&values) {
                Ok(s) => VariableSummary {
                    variable,
                    unit,
                    n: values.len(),
                    min: s.min,
                    max: s.max,
                    mean: s.mean,
                    sample_std: s.sample_std,
                },
                Err(_) => VariableSummary {
                    variable,
                    unit,
                    n: values.len(),
                    min: f64::NAN,
                    max: f64::NAN,
                    mean: f64::NAN,
                    sample_std: f64::NAN,
                },
            },
        )
        .collect())
}
