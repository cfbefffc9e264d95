//! The exponent calculus linking a subconvexity exponent theta to the
//! prime geodesic error exponent, and least-squares fits of log-log data.
//!
//! For theta in [0, 1/6]:
//!
//! ```text
//! alpha = 1 - 1/(2(1 + theta))          beta  = theta/(1 + theta)
//! sigma = (20 + 30t - 4t^2)/(22 + 27t - 2t^2)
//! E     = (3 + 2 beta - (3 + beta) sigma) / ((3 - 2 alpha)(2 - sigma))
//! delta = 5/8 + theta/4
//! ```
//!
//! sigma is the value at which E = 1/8 + theta/4, which makes the two
//! competing terms 1/2 + E and 2 delta - 1/2 - E equal at delta.

use crate::config::TOLERANCES;
use crate::error::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BoundProfile {
    pub theta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub sigma_opt: f64,
    pub delta_exp: f64,
}

impl BoundProfile {
    /// E = (3 + 2 beta - (3 + beta) sigma) / ((3 - 2 alpha)(2 - sigma)).
    pub fn e_exponent(&self) -> f64 {
        let (a, b, s) = (self.alpha, self.beta, self.sigma_opt);
        (3.0 + 2.0 * b - (3.0 + b) * s) / ((3.0 - 2.0 * a) * (2.0 - s))
    }

    /// The two terms whose maximum bounds the error exponent.
    pub fn branches(&self) -> (f64, f64) {
        let e = self.e_exponent();
        (0.5 + e, 2.0 * self.delta_exp - 0.5 - e)
    }
}

pub const THETA_MAX: f64 = 1.0 / 6.0;

/// alpha = 1 - 1/(2(1+theta)), beta = theta/(1+theta).
pub fn alpha_beta(theta: f64) -> (f64, f64) {
    (1.0 - 1.0 / (2.0 * (1.0 + theta)), theta / (1.0 + theta))
}

pub fn exponent_calculus(theta: f64) -> Result<BoundProfile> {
    if !(0.0..=THETA_MAX).contains(&theta) {
        return Err(LabError::pre(format!(
            "theta must lie in [0, 1/6], got {theta}"
        )));
    }
    let (alpha, beta) = alpha_beta(theta);
    let t = theta;
    let sigma_opt = (20.0 + 30.0 * t - 4.0 * t * t) / (22.0 + 27.0 * t - 2.0 * t * t);
    let profile = BoundProfile {
        theta,
        alpha,
        beta,
        sigma_opt,
        delta_exp: 5.0 / 8.0 + theta / 4.0,
    };
    let (lower, upper) = profile.branches();
    let tol = TOLERANCES.exponent_identity;
    if (lower.max(upper) - profile.delta_exp).abs() > tol || (lower - upper).abs() > tol {
        return Err(LabError::Numerical(format!(
            "branch balance fails at theta = {theta}: {lower} vs {upper}"
        )));
    }
    Ok(profile)
}

/// True iff theta <= E(profile), up to the exponent tolerance. Equality
/// holds exactly at theta = 1/6.
pub fn theta_constraint_check(profile: &BoundProfile) -> bool {
    profile.theta <= profile.e_exponent() + TOLERANCES.exponent_identity
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    /// Largest absolute deviation from the line in log space.
    pub residual: f64,
}

/// Least-squares line through (log x, log |y|); rows with y = 0 are dropped.
pub fn fit_exponent(rows: &[(f64, f64)]) -> Result<Fit> {
    if rows.len() < 3 {
        return Err(LabError::pre(format!(
            "a fit needs at least 3 rows, got {}",
            rows.len()
        )));
    }
    if rows.windows(2).any(|w| !(w[1].0 > w[0].0)) || rows[0].0 <= 0.0 {
        return Err(LabError::pre("fit abscissae must be positive and strictly increasing"));
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.1 != 0.0)
        .map(|&(x, y)| (x.ln(), y.abs().ln()))
        .collect();
    if pts.is_empty() {
        return Err(LabError::pre("all ordinates are zero"));
    }
    if pts.len() < 2 {
        return Err(LabError::pre("fewer than two nonzero ordinates"));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).abs())
        .fold(0.0, f64::max);
    Ok(Fit {
        slope,
        intercept,
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SweepRow {
    pub parameter: f64,
    pub value: f64,
    pub envelope: f64,
}

/// Experiment rows with the fitted exponent of |value| against parameter.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub fitted_exponent: f64,
    pub fit_residual: f64,
}

impl SweepResult {
    pub fn from_rows(rows: Vec<SweepRow>) -> Result<Self> {
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.parameter, r.value)).collect();
        let fit = fit_exponent(&pts)?;
        Ok(SweepResult {
            rows,
            fitted_exponent: fit.slope,
            fit_residual: fit.residual,
        })
    }
}
