//! Paired t-test for measured-vs-estimated comparisons.

use alloc::string::String;

use crate::dist::two_sided_t_p_value;
use crate::error::{Error, Result};
use crate::stats::{mean, sample_std_about};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    DoNotRejectH0,
    RejectH0,
}

impl Decision {
    pub fn as_str(self) -> &'static str {
        match self {
            Decision::DoNotRejectH0 => "Do not reject H0",
            Decision::RejectH0 => "Reject H0",
        }
    }
}

impl core::fmt::Display for Decision {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of a two-sided paired t-test of H0: mean difference = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedComparison {
    pub label: String,
    pub n: usize,
    pub mean_measured: f64,
    pub mean_estimated: f64,
    pub t_stat: f64,
    pub p_value: f64,
    pub alpha: f64,
    pub decision: Decision,
}

impl PairedComparison {
    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// Two-sided paired t-test on the elementwise differences `a − b`.
///
/// Degenerate difference series take their analytic limits: all-zero
/// differences give p = 1, constant nonzero differences give p = 0. The
/// decision is reject iff `p < alpha`.
pub fn paired_t_test(a: &[f64], b: &[f64], alpha: f64) -> Result<PairedComparison> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.len() < 2 {
        return Err(Error::InsufficientData {
            required: 2,
            available: a.len(),
        });
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(String::from("alpha must be in (0, 1)")));
    }
    for (name, s) in [("a", a), ("b", b)] {
        if s.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite(String::from(name)));
        }
    }

    let n = a.len();
    let diffs: alloc::vec::Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let d_mean = mean(&diffs);
    let d_std = sample_std_about(&diffs, d_mean);

    let (t_stat, p_value) = if d_std == 0.0 {
        if d_mean == 0.0 {
            (0.0, 1.0)
        } else if d_mean > 0.0 {
            (f64::INFINITY, 0.0)
        } else {
            (f64::NEG_INFINITY, 0.0)
        }
    } else {
        let t = d_mean / (d_std / libm::sqrt(n as f64));
        (t, two_sided_t_p_value(t, n - 1)?)
    };

    let decision = if p_value < alpha {
        Decision::RejectH0
    } else {
        Decision::DoNotRejectH0
    };

    Ok(PairedComparison {
        label: String::new(),
        n,
        mean_measured: mean(a),
        mean_estimated: mean(b),
        t_stat,
        p_value,
        alpha,
        decision,
    })
}
