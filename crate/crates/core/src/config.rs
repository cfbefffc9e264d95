//! Numerical tolerances shared by the operations and by the test suites.
//!
//! Every threshold used to accept or reject a computed value lives here, so
//! the acceptance suite and the library agree on what "close enough" means.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Relative error target of gamma, zeta and Hurwitz zeta.
    pub special_rel: f64,
    /// Relative error target of quadratic Dirichlet L-values.
    pub dirichlet_rel: f64,
    /// Residual of exact identities evaluated in floating point
    /// (Kloosterman expansion, Zagier/Dirichlet agreement).
    pub identity: f64,
    /// Residual of the functional equation of the completed Zagier series.
    pub functional_equation: f64,
    /// Absolute error of the adaptive quadrature used for density integrals.
    pub quadrature_abs: f64,
    /// Mass normalisation error of the smoothing kernel.
    pub kernel_mass: f64,
    /// Agreement between trace assembly and conjugacy enumeration.
    pub geodesic_oracle: f64,
    /// Largest tolerated imaginary part of a real-by-construction sum.
    pub real_part_only: f64,
    /// Exponent-calculus identities.
    pub exponent_identity: f64,
    /// Ceiling on the neglected tail of a damped spectral sum.
    pub damping_tail: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        TOLERANCES
    }
}

pub const TOLERANCES: Tolerances = Tolerances {
    special_rel: 1e-10,
    dirichlet_rel: 1e-8,
    identity: 1e-9,
    functional_equation: 1e-6,
    quadrature_abs: 1e-6,
    kernel_mass: 1e-8,
    geodesic_oracle: 1e-9,
    real_part_only: 1e-12,
    exponent_identity: 1e-10,
    damping_tail: 1e-8,
};

/// Largest |D| for which `dirichlet_l` takes the Hurwitz-zeta route; larger
/// conductors use the incomplete-gamma expansion, which costs O(sqrt|D|).
pub const HURWITZ_ROUTE_MAX_CONDUCTOR: u64 = 2_000;

/// Desk-scale limits.
pub const PSI_X_MAX: f64 = 1e9;
pub const ORACLE_X_MAX: f64 = 500.0;
pub const AVERAGE_X_MAX: u64 = 10_000;
pub const DIRICHLET_CONDUCTOR_MAX: u64 = 100_000_000;
pub const CHAR_SUM_X_MAX: u64 = 100_000_000;
pub const BILINEAR_MAX: u64 = 10_000;
pub const MEAN_VALUE_BUDGET: u64 = 100_000_000;

/// Exponent used in the spectral cutoff x^(1+eps)/Y of the smoothed error.
pub const SPECTRAL_CUTOFF_EPS: f64 = 0.1;
