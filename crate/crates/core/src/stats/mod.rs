//! Statistical engine: descriptive statistics, Pearson correlation,
//! ordinary least squares with inference, standardized coefficients,
//! collinearity diagnostics, and paired t-tests.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub mod diagnostics;
pub mod ols;
pub mod ttest;

pub use diagnostics::{diagnostics_report, vif, DiagnosticsReport, VifEntry};
pub use ols::{
    f_from_r_squared, ols_fit, standardized_coefficients, Coefficient, DesignSpec, FitRow,
    FittedModel, Stars,
};
pub use ttest::{paired_t_test, Decision, PairedComparison};

/// Descriptive summary of a numeric series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// Sample standard deviation (n − 1 denominator).
    pub sample_std: f64,
}

/// Min, max, mean, and sample standard deviation of a series.
pub fn descriptive_stats(series: &[f64]) -> Result<Summary> {
    if series.len() < 2 {
        return Err(Error::InsufficientData {
            required: 2,
            available: series.len(),
        });
    }
    if let Some(idx) = series.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!("series[{idx}]")));
    }
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &v in series {
        min = min.min(v);
        max = max.max(v);
    }
    let mean = mean(series);
    Ok(Summary {
        min,
        max,
        mean,
        sample_std: sample_std_about(series, mean),
    })
}

/// Pearson product-moment correlation of two series.
///
/// Invariant under positive affine rescaling of either series; the result
/// is clamped into [−1, 1] against rounding spill.
pub fn pearson_r(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 3 {
        return Err(Error::InsufficientData {
            required: 3,
            available: x.len(),
        });
    }
    for (name, s) in [("x", x), ("y", y)] {
        if s.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite(String::from(name)));
        }
    }
    let mx = mean(x);
    let my = mean(y);
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        let dx = xi - mx;
        let dy = yi - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::ZeroVariance(String::from("x")));
    }
    if syy == 0.0 {
        return Err(Error::ZeroVariance(String::from("y")));
    }
    Ok((sxy / libm::sqrt(sxx * syy)).clamp(-1.0, 1.0))
}

/// Pairwise Pearson correlations of named columns.
///
/// Returns a symmetric matrix with an exact unit diagonal; entry `(i, j)`
/// is `pearson_r(columns[i], columns[j])`.
pub fn correlation_matrix(columns: &[(&str, &[f64])]) -> Result<Vec<Vec<f64>>> {
    if columns.len() < 2 {
        return Err(Error::InsufficientData {
            required: 2,
            available: columns.len(),
        });
    }
    let n = columns[0].1.len();
    for (name, col) in columns {
        if col.len() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: col.len(),
            });
        }
        if col.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite(String::from(*name)));
        }
    }
    let k = columns.len();
    let mut m = alloc::vec![alloc::vec![0.0; k]; k];
    for i in 0..k {
        m[i][i] = 1.0;
        for j in i + 1..k {
            let r = pearson_r(columns[i].1, columns[j].1).map_err(|e| match e {
                Error::ZeroVariance(which) => Error::ZeroVariance(String::from(if which == "x" {
                    columns[i].0
                } else {
                    columns[j].0
                })),
                other => other,
            })?;
            m[i][j] = r;
            m[j][i] = r;
        }
    }
    Ok(m)
}

pub(crate) fn mean(series: &[f64]) -> f64 {
    series.iter().sum::<f64>() / series.len() as f64
}

/// Sample standard deviation with a precomputed mean.
pub(crate) fn sample_std_about(series: &[f64], mean: f64) -> f64 {
    let ss: f64 = series.iter().map(|v| (v - mean) * (v - mean)).sum();
    libm::sqrt(ss / (series.len() - 1) as f64)
}
