//! Ordinary least squares with full inference.
//!
//! A fit carries coefficient standard errors from the unbiased residual
//! variance estimate, two-sided t-test p-values, the overall F statistic
//! with its p-value, R² and adjusted R², standardized coefficients, and
//! significance stars at the conventional thresholds.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::dist::{f_cdf, two_sided_t_p_value};
use crate::error::{Error, Result};
use crate::linalg::{householder_lstsq, SolveError};
use crate::stats::{mean, sample_std_about};

/// Significance stars: `*` for p < 0.05, `**` for p < 0.01, `***` for
/// p < 0.001. A p-value exactly at a threshold receives the weaker label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stars {
    None,
    P05,
    P01,
    P001,
}

impl Stars {
    pub fn from_p_value(p: f64) -> Stars {
        if p < 0.001 {
            Stars::P001
        } else if p < 0.01 {
            Stars::P01
        } else if p < 0.05 {
            Stars::P05
        } else {
            Stars::None
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Stars::None => "",
            Stars::P05 => "*",
            Stars::P01 => "**",
            Stars::P001 => "***",
        }
    }
}

impl core::fmt::Display for Stars {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What to regress on what. The intercept flag exists for symmetry with
/// the report layout; intercept-free fits are not supported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignSpec {
    pub response_name: String,
    pub predictor_names: Vec<String>,
    pub include_intercept: bool,
}

impl DesignSpec {
    pub fn new(response: impl Into<String>, predictors: Vec<String>) -> DesignSpec {
        DesignSpec {
            response_name: response.into(),
            predictor_names: predictors,
            include_intercept: true,
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.include_intercept {
            return Err(Error::InvalidSpec(String::from(
                "intercept-free designs are not supported",
            )));
        }
        if self.predictor_names.is_empty() {
            return Err(Error::InvalidSpec(String::from("no predictors")));
        }
        for (i, a) in self.predictor_names.iter().enumerate() {
            if a == &self.response_name {
                return Err(Error::InvalidSpec(format!(
                    "response `{a}` also appears as a predictor"
                )));
            }
            if self.predictor_names[i + 1..].contains(a) {
                return Err(Error::InvalidSpec(format!("duplicate predictor `{a}`")));
            }
        }
        Ok(())
    }
}

/// One observation row; `None` marks a missing field. Rows with any
/// missing field are excluded from the fit (listwise deletion) and counted
/// in [`FittedModel::n_dropped`].
#[derive(Debug, Clone, PartialEq)]
pub struct FitRow {
    pub predictors: Vec<Option<f64>>,
    pub response: Option<f64>,
}

impl FitRow {
    pub fn complete(predictors: Vec<f64>, response: f64) -> FitRow {
        FitRow {
            predictors: predictors.into_iter().map(Some).collect(),
            response: Some(response),
        }
    }

    fn is_complete(&self) -> bool {
        self.response.is_some() && self.predictors.iter().all(|p| p.is_some())
    }
}

/// A single fitted term.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficient {
    pub name: String,
    pub beta: f64,
    pub std_error: f64,
    pub t_stat: f64,
    pub p_value: f64,
    /// Standardized coefficient β′; absent for the intercept.
    pub beta_std: Option<f64>,
    pub stars: Stars,
}

/// Output of [`ols_fit`].
#[derive(Debug, Clone, PartialEq)]
pub struct FittedModel {
    pub spec: DesignSpec,
    pub n_used: usize,
    pub n_dropped: usize,
    /// Intercept first, then predictors in spec order.
    pub coefficients: Vec<Coefficient>,
    pub r_squared: f64,
    pub adj_r_squared: f64,
    pub f_stat: f64,
    pub df1: usize,
    pub df2: usize,
    pub f_p_value: f64,
}

impl FittedModel {
    /// Evaluates the fitted surface at one predictor vector.
    pub fn predict(&self, predictors: &[f64]) -> Result<f64> {
        if predictors.len() != self.spec.predictor_names.len() {
            return Err(Error::LengthMismatch {
                left: self.spec.predictor_names.len(),
                right: predictors.len(),
            });
        }
        let mut y = self.coefficients[0].beta;
        for (c, x) in self.coefficients[1..].iter().zip(predictors) {
            y += c.beta * x;
        }
        Ok(y)
    }
}

/// The F statistic implied by R² and the degrees of freedom:
/// `(R²/df1) / ((1 − R²)/df2)`.
pub fn f_from_r_squared(r_squared: f64, df1: usize, df2: usize) -> f64 {
    let denom = 1.0 - r_squared;
    if denom <= 0.0 {
        return f64::INFINITY;
    }
    (r_squared / df1 as f64) / (denom / df2 as f64)
}

/// Fits a multiple linear regression with intercept by orthogonal
/// factorization and derives the full inference set.
///
/// Rows with missing fields are dropped first; the fit then requires
/// `n_used >= predictors + 2` and a full-rank design. A rank-deficient
/// design (zero-variance or duplicated predictor) produces
/// [`Error::SingularDesign`] naming the offending column.
pub fn ols_fit(spec: &DesignSpec, rows: &[FitRow]) -> Result<FittedModel> {
    spec.validate()?;
    let p = spec.predictor_names.len();

    for row in rows {
        if row.predictors.len() != p {
            return Err(Error::LengthMismatch {
                left: p,
                right: row.predictors.len(),
            });
        }
    }

    let used: Vec<&FitRow> = rows.iter().filter(|r| r.is_complete()).collect();
    let n_used = used.len();
    let n_dropped = rows.len() - n_used;
    if n_used < p + 2 {
        return Err(Error::InsufficientData {
            required: p + 2,
            available: n_used,
        });
    }

    let mut columns: Vec<Vec<f64>> = vec![vec![1.0; n_used]; p + 1];
    let mut y = Vec::with_capacity(n_used);
    for (i, row) in used.iter().enumerate() {
        for (j, v) in row.predictors.iter().enumerate() {
            let v = v.unwrap();
            if !v.is_finite() {
                return Err(Error::NonFinite(spec.predictor_names[j].clone()));
            }
            columns[j + 1][i] = v;
        }
        let r = row.response.unwrap();
        if !r.is_finite() {
            return Err(Error::NonFinite(spec.response_name.clone()));
        }
        y.push(r);
    }

    let solved = householder_lstsq(&columns, &y).map_err(|e| match e {
        SolveError::RankDeficient(j) => Error::SingularDesign {
            column: if j == 0 {
                String::from("intercept")
            } else {
                spec.predictor_names[j - 1].clone()
            },
        },
    })?;

    let y_mean = mean(&y);
    let tss: f64 = y.iter().map(|v| (v - y_mean) * (v - y_mean)).sum();
    if tss == 0.0 {
        return Err(Error::ZeroVariance(spec.response_name.clone()));
    }

    let df1 = p;
    let df2 = n_used - p - 1;
    let r_squared = (1.0 - solved.rss / tss).clamp(0.0, 1.0);
    let adj_r_squared = 1.0 - (1.0 - r_squared) * (n_used as f64 - 1.0) / df2 as f64;
    let f_stat = f_from_r_squared(r_squared, df1, df2);
    let f_p_value = if f_stat.is_infinite() {
        0.0
    } else {
        1.0 - f_cdf(f_stat, df1, df2)?
    };

    let sigma2 = solved.rss / df2 as f64;
    let response_std = sample_std_about(&y, y_mean);

    let mut coefficients = Vec::with_capacity(p + 1);
    for (k, &beta) in solved.coefficients.iter().enumerate() {
        let std_error = libm::sqrt(sigma2 * solved.xtx_inv_diag[k]);
        let t_stat = if std_error > 0.0 {
            beta / std_error
        } else if beta == 0.0 {
            0.0
        } else if beta > 0.0 {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        };
        let p_value = if t_stat.is_infinite() {
            0.0
        } else {
            two_sided_t_p_value(t_stat, df2)?
        };
        let (name, beta_std) = if k == 0 {
            (String::from("intercept"), None)
        } else {
            let col = &columns[k];
            let sx = sample_std_about(col, mean(col));
            (
                spec.predictor_names[k - 1].clone(),
                Some(beta * sx / response_std),
            )
        };
        coefficients.push(Coefficient {
            name,
            beta,
            std_error,
            t_stat,
            p_value,
            beta_std,
            stars: Stars::from_p_value(p_value),
        });
    }

    Ok(FittedModel {
        spec: spec.clone(),
        n_used,
        n_dropped,
        coefficients,
        r_squared,
        adj_r_squared,
        f_stat,
        df1,
        df2,
        f_p_value,
    })
}

/// Standardized coefficients from externally supplied scales:
/// `β′_k = β_k · σ_xk / σ_y`. No standardized intercept exists.
pub fn standardized_coefficients(
    fit: &FittedModel,
    predictor_stds: &[f64],
    response_std: f64,
) -> Result<Vec<f64>> {
    if predictor_stds.len() != fit.df1 {
        return Err(Error::LengthMismatch {
            left: fit.df1,
            right: predictor_stds.len(),
        });
    }
    if response_std <= 0.0 {
        return Err(Error::ZeroVariance(fit.spec.response_name.clone()));
    }
    if let Some(i) = predictor_stds.iter().position(|s| *s <= 0.0) {
        return Err(Error::ZeroVariance(fit.spec.predictor_names[i].clone()));
    }
    Ok(fit
        .coefficients
        .iter()
        .skip(1)
        .zip(predictor_stds)
        .map(|(c, sx)| c.beta * sx / response_std)
        .collect())
}
