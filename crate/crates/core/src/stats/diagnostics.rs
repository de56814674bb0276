//! Collinearity diagnostics: variance inflation factors and the combined
//! correlation/VIF report.
//!
//! `VIF_j = 1/(1 − R²_j)` where `R²_j` comes from regressing predictor `j`
//! (with intercept) on all the others. A VIF of 10 or more signals a
//! serious multicollinearity problem.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::stats::correlation_matrix;
use crate::stats::ols::{ols_fit, DesignSpec, FitRow};

/// Threshold above which a predictor is flagged.
pub const VIF_WARN_THRESHOLD: f64 = 10.0;

#[derive(Debug, Clone, PartialEq)]
pub struct VifEntry {
    pub name: String,
    /// `f64::INFINITY` under perfect collinearity.
    pub vif: f64,
}

/// Correlation matrix, VIFs, and collinearity warnings for one model's
/// variable set. The first variable is the response; VIF entries cover the
/// predictors only.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsReport {
    pub variable_names: Vec<String>,
    pub correlation_matrix: Vec<Vec<f64>>,
    pub vif: Vec<VifEntry>,
    pub warnings: Vec<String>,
}

/// Variance inflation factor per predictor.
///
/// Perfect collinearity is reported as an infinite VIF, not an error; the
/// caller decides how to surface it.
pub fn vif(predictors: &[(&str, &[f64])]) -> Result<Vec<VifEntry>> {
    if predictors.len() < 2 {
        return Err(Error::InsufficientData {
            required: 2,
            available: predictors.len(),
        });
    }
    let n = predictors[0].1.len();
    for (_, col) in predictors {
        if col.len() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: col.len(),
            });
        }
    }
    if n < predictors.len() + 2 {
        return Err(Error::InsufficientData {
            required: predictors.len() + 2,
            available: n,
        });
    }

    let mut out = Vec::with_capacity(predictors.len());
    for j in 0..predictors.len() {
        let r2 = auxiliary_r_squared(predictors, j)?;
        let vif = match r2 {
            Some(r2) if r2 < 1.0 => 1.0 / (1.0 - r2),
            _ => f64::INFINITY,
        };
        out.push(VifEntry {
            name: String::from(predictors[j].0),
            vif,
        });
    }
    Ok(out)
}

/// R² from regressing predictor `j` on the remaining predictors.
///
/// Returns `None` when predictor `j` is itself constant (perfectly
/// collinear with the intercept). Rank-deficient columns among the
/// regressors are dropped and the fit retried: removing a collinear column
/// leaves the design span, and therefore R²_j, unchanged.
fn auxiliary_r_squared(predictors: &[(&str, &[f64])], j: usize) -> Result<Option<f64>> {
    let response = predictors[j].1;
    let mut others: Vec<usize> = (0..predictors.len()).filter(|&k| k != j).collect();

    loop {
        if others.is_empty() {
            return Ok(Some(0.0));
        }
        let spec = DesignSpec::new(
            predictors[j].0,
            others
                .iter()
                .map(|&k| String::from(predictors[k].0))
                .collect(),
        );
        let rows: Vec<FitRow> = response
            .iter()
            .enumerate()
            .map(|(i, &y)| {
                FitRow::complete(others.iter().map(|&k| predictors[k].1[i]).collect(), y)
            })
            .collect();
        match ols_fit(&spec, &rows) {
            Ok(fit) => return Ok(Some(fit.r_squared)),
            Err(Error::ZeroVariance(_)) => return Ok(None),
            Err(Error::SingularDesign { column }) => {
                let pos = others
                    .iter()
                    .position(|&k| predictors[k].0 == column)
                    .ok_or(Error::SingularDesign { column })?;
                others.remove(pos);
            }
            Err(e) => return Err(e),
        }
    }
}

/// Builds the combined diagnostics block for one response and its
/// predictors: full correlation matrix (response first), per-predictor
/// VIF, and warnings for entries at or above the threshold.
pub fn diagnostics_report(
    response: (&str, &[f64]),
    predictors: &[(&str, &[f64])],
) -> Result<DiagnosticsReport> {
    let mut columns: Vec<(&str, &[f64])> = Vec::with_capacity(predictors.len() + 1);
    columns.push(response);
    columns.extend_from_slice(predictors);

    let correlation = correlation_matrix(&columns)?;
    let vif_entries = vif(predictors)?;

    let mut warnings = Vec::new();
    for entry in &vif_entries {
        if entry.vif.is_infinite() {
            warnings.push(format!(
                "VIF for `{}` is infinite: perfect collinearity",
                entry.name
            ));
        } else if entry.vif >= VIF_WARN_THRESHOLD {
            warnings.push(format!(
                "VIF for `{}` is {:.2} (>= 10): serious multicollinearity",
                entry.name, entry.vif
            ));
        }
    }

    Ok(DiagnosticsReport {
        variable_names: columns.iter().map(|(n, _)| String::from(*n)).collect(),
        correlation_matrix: correlation,
        vif: vif_entries,
        warnings,
    })
}
