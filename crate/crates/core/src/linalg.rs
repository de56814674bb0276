//! Least-squares solver used by the regression engine.
//!
//! Householder orthogonalization rather than explicit normal equations:
//! identical answers on well-posed data, better behavior near collinearity.
//! The normal-equations route exists only in test oracles.

use alloc::vec;
use alloc::vec::Vec;

/// A column whose norm after orthogonalization falls below this fraction of
/// its original norm is declared collinear.
const RANK_TOL: f64 = 1e-10;

pub(crate) struct LeastSquares {
    /// Solution of `min ‖Xb − y‖²`, length `p`.
    pub coefficients: Vec<f64>,
    /// Residual sum of squares.
    pub rss: f64,
    /// Diagonal of `(XᵀX)⁻¹`, for coefficient standard errors.
    pub xtx_inv_diag: Vec<f64>,
}

pub(crate) enum SolveError {
    /// Index of the first design column that collapsed during
    /// orthogonalization.
    RankDeficient(usize),
}

/// Solves the least-squares problem for a dense column-major design matrix.
///
/// `columns` holds `p` columns of length `n` with `n >= p >= 1`.
pub(crate) fn householder_lstsq(
    columns: &[Vec<f64>],
    y: &[f64],
) -> Result<LeastSquares, SolveError> {
    let p = columns.len();
    let n = y.len();
    debug_assert!(p >= 1 && n >= p);
    debug_assert!(columns.iter().all(|c| c.len() == n));

    // Working copies; `a` is overwritten by R and the reflector tails.
    let mut a: Vec<Vec<f64>> = columns.to_vec();
    let mut rhs: Vec<f64> = y.to_vec();
    let original_norms: Vec<f64> = a.iter().map(|c| norm(c)).collect();

    for j in 0..p {
        // Householder reflector for the trailing part of column j.
        let tail_norm = norm(&a[j][j..]);
        if tail_norm <= RANK_TOL * original_norms[j] || tail_norm == 0.0 {
            return Err(SolveError::RankDeficient(j));
        }
        let alpha = if a[j][j] >= 0.0 {
            -tail_norm
        } else {
            tail_norm
        };
        let mut v: Vec<f64> = a[j][j..].to_vec();
        v[0] -= alpha;
        let v_dot = dot(&v, &v);
        if v_dot > 0.0 {
            // Apply I − 2vvᵀ/vᵀv to the remaining columns and the rhs.
            for col in a.iter_mut().skip(j + 1) {
                reflect(&v, &mut col[j..], v_dot);
            }
            reflect(&v, &mut rhs[j..], v_dot);
        }
        a[j][j] = alpha;
        for r in a[j][j + 1..].iter_mut() {
            *r = 0.0;
        }
    }

    // Back substitution: R b = (Qᵀy)[..p]
    let mut beta = vec![0.0; p];
    for i in (0..p).rev() {
        let mut s = rhs[i];
        for (k, b) in beta.iter().enumerate().skip(i + 1) {
            s -= a[k][i] * b;
        }
        beta[i] = s / a[i][i];
    }

    let rss: f64 = rhs[p..].iter().map(|v| v * v).sum();

    // (XᵀX)⁻¹ = R⁻¹R⁻ᵀ; its diagonal entries are the squared row norms of
    // R⁻¹, obtained column by column from R u = e_k.
    let mut xtx_inv_diag = vec![0.0; p];
    for k in 0..p {
        let mut u = vec![0.0; p];
        for i in (0..=k).rev() {
            let mut s = if i == k { 1.0 } else { 0.0 };
            for (m, um) in u.iter().enumerate().take(k + 1).skip(i + 1) {
                s -= a[m][i] * um;
            }
            u[i] = s / a[i][i];
        }
        // Row norms of R⁻¹: entry (i, k) of R⁻¹ is u[i]; accumulate per row.
        for (i, ui) in u.iter().enumerate().take(k + 1) {
            xtx_inv_diag[i] += ui * ui;
        }
    }

    Ok(LeastSquares {
        coefficients: beta,
        rss,
        xtx_inv_diag,
    })
}

fn norm(v: &[f64]) -> f64 {
    libm::sqrt(dot(v, v))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn reflect(v: &[f64], target: &mut [f64], v_dot: f64) {
    let scale = 2.0 * dot(v, target) / v_dot;
    for (t, vi) in target.iter_mut().zip(v) {
        *t -= scale * vi;
    }
}
