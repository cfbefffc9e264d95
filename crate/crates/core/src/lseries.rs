//! Quadratic Dirichlet L-functions, the Zagier L-series L(s, delta), its
//! completed form, and the density function m_t(x) of the central-value
//! average over delta = n^2 - 4.
//!
//! L(s, delta) is always continued through the factorisation
//!
//! ```text
//! L(s, delta) = ell^(1/2 - s) T_ell(s) L(s, chi_D),   delta = D ell^2,
//! T_ell(s)    = sum_{l1 l2 = ell} mu(l1) chi_D(l1) tau_s(l2) / sqrt(l1),
//! ```
//!
//! and L(s, chi_D) is evaluated either from Hurwitz zeta values or, for
//! large conductors, from the incomplete-Gamma expansion of the completed
//! L-function.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::arith::{
    decompose_discriminant, divisors, is_fundamental, kronecker, mobius, tau_s, Discriminant,
};
use crate::config::{DIRICHLET_CONDUCTOR_MAX, HURWITZ_ROUTE_MAX_CONDUCTOR};
use crate::error::{LabError, Result};
use crate::par::{map_indexed, pairwise_sum_complex};
use crate::quad::simpson_complex;
use crate::special::{
    gamma, gamma_upper, hurwitz_without_pole, is_nonpositive_integer, zeta,
    zeta_prime_three_halves, EULER_GAMMA,
};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The incomplete-Gamma expansion loses about pi|t|/4 nats to cancellation,
/// so it is only used up to this height.
const AFE_MAX_HEIGHT: f64 = 10.0;

/// Terms with pi n^2 / q beyond this are below 1e-19 relative.
const AFE_CUTOFF: f64 = 45.0;

/// One evaluation of L(s, delta) together with its correction factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZagierEvaluation {
    pub delta: i64,
    /// `None` when delta = 0.
    pub discriminant: Option<Discriminant>,
    pub s: Complex64,
    pub value: Complex64,
    /// T_ell(s); equal to 1 when ell = 1 and when delta = 0.
    pub correction_factor: Complex64,
}

fn check_fundamental(d: i64) -> Result<()> {
    if !is_fundamental(d) {
        return Err(LabError::pre(format!(
            "{d} is not a fundamental discriminant"
        )));
    }
    if d.unsigned_abs() > DIRICHLET_CONDUCTOR_MAX {
        return Err(LabError::pre(format!(
            "|D| = {} exceeds the conductor limit {DIRICHLET_CONDUCTOR_MAX}",
            d.unsigned_abs()
        )));
    }
    Ok(())
}

/// L(s, chi_D) for a fundamental discriminant D (D = 1 gives zeta).
pub fn dirichlet_l(d: i64, s: Complex64) -> Result<Complex64> {
    check_fundamental(d)?;
    if d == 1 {
        return zeta(s);
    }
    if d.unsigned_abs() <= HURWITZ_ROUTE_MAX_CONDUCTOR || s.im.abs() > AFE_MAX_HEIGHT {
        dirichlet_l_hurwitz(d, s)
    } else {
        dirichlet_l_expansion(d, s)
    }
}

/// `|D|^(-s) sum_{a=1}^{|D|} chi_D(a) zeta(s, a/|D|)` for D != 1.
///
/// The pole parts 1/(s-1) cancel because chi_D sums to zero over a period,
/// so they are dropped term by term; this keeps s = 1 evaluable.
pub fn dirichlet_l_hurwitz(d: i64, s: Complex64) -> Result<Complex64> {
    check_fundamental(d)?;
    if d == 1 {
        return zeta(s);
    }
    let q = d.unsigned_abs();
    let mut total = c(0.0);
    for a in 1..=q {
        let chi = kronecker(d, a as i64);
        if chi == 0 {
            continue;
        }
        total += chi as f64 * hurwitz_without_pole(s, a as f64 / q as f64);
    }
    Ok((-s * (q as f64).ln()).exp() * total)
}

/// L(s, chi_D) from the incomplete-Gamma expansion of the completed
/// function (root number 1 for real primitive characters):
///
/// ```text
/// Gamma(a) L(s) = sum chi(n) n^-s Gamma(a, x_n)
///               + (q/pi)^(1/2 - s) sum chi(n) n^(s-1) Gamma(a', x_n),
/// a = (s + k)/2,  a' = (1 - s + k)/2,  x_n = pi n^2 / q,
/// ```
/// with k = 0 for D > 0 and k = 1 for D < 0.
pub fn dirichlet_l_expansion(d: i64, s: Complex64) -> Result<Complex64> {
    check_fundamental(d)?;
    if d == 1 {
        return Err(LabError::pre(
            "the expansion needs a nonprincipal character",
        ));
    }
    let q = d.unsigned_abs() as f64;
    let kappa = if d < 0 { 1.0 } else { 0.0 };
    let a = (s + kappa) / 2.0;
    if is_nonpositive_integer(a) {
        // trivial zero
        return Ok(c(0.0));
    }
    let a_dual = (1.0 - s + kappa) / 2.0;
    let n_max = ((AFE_CUTOFF * q / PI).sqrt()).ceil() as u64 + 1;
    let mut direct = c(0.0);
    let mut dual = c(0.0);
    for n in 1..=n_max {
        let chi = kronecker(d, n as i64);
        if chi == 0 {
            continue;
        }
        let x = PI * (n as f64) * (n as f64) / q;
        let ln_n = (n as f64).ln();
        direct += chi as f64 * (-s * ln_n).exp() * gamma_upper(a, x)?;
        dual += chi as f64 * ((s - 1.0) * ln_n).exp() * gamma_upper(a_dual, x)?;
    }
    let dual_factor = ((0.5 - s) * (q / PI).ln()).exp();
    Ok((direct + dual_factor * dual) / gamma(a)?)
}

/// T_ell(s) = sum_{l1 l2 = ell} mu(l1) chi_D(l1) tau_s(l2) / sqrt(l1).
pub fn t_ell_factor(d: i64, ell: u64, s: Complex64) -> Complex64 {
    assert!(ell >= 1);
    let mut total = c(0.0);
    for l1 in divisors(ell) {
        let mu = mobius(l1);
        if mu == 0 {
            continue;
        }
        let chi = kronecker(d, l1 as i64);
        if chi == 0 {
            continue;
        }
        total += (mu * chi as i64) as f64 * tau_s(ell / l1, s) / (l1 as f64).sqrt();
    }
    total
}

/// Full evaluation of L(s, delta), keeping the factor T_ell(s).
pub fn zagier_evaluation(delta: i64, s: Complex64) -> Result<ZagierEvaluation> {
    if delta == 0 {
        if s == c(1.0) {
            return Err(LabError::Pole {
                function: "zagier_l",
                re: s.re,
                im: s.im,
            });
        }
        return Ok(ZagierEvaluation {
            delta,
            discriminant: None,
            s,
            value: zeta(2.0 * s - 1.0)?,
            correction_factor: c(1.0),
        });
    }
    let disc = decompose_discriminant(delta)?;
    let correction = t_ell_factor(disc.d_fund, disc.ell, s);
    let l_value = dirichlet_l(disc.d_fund, s)?;
    let ell_power = ((0.5 - s) * (disc.ell as f64).ln()).exp();
    Ok(ZagierEvaluation {
        delta,
        discriminant: Some(disc),
        s,
        value: ell_power * correction * l_value,
        correction_factor: correction,
    })
}

/// L(s, delta) for delta = 0, 1 (mod 4).
pub fn zagier_l(delta: i64, s: Complex64) -> Result<Complex64> {
    Ok(zagier_evaluation(delta, s)?.value)
}

/// Lambda(s, delta) = (pi/|delta|)^(-s/2) Gamma(s/2 + 1/4 - sgn(delta)/4) L(s, delta).
pub fn completed_zagier(delta: i64, s: Complex64) -> Result<Complex64> {
    if delta == 0 {
        return Err(LabError::pre("the completed series needs delta != 0"));
    }
    let sign = delta.signum() as f64;
    let gamma_arg = s / 2.0 + 0.25 - sign / 4.0;
    let scale = (s / 2.0 * (delta.unsigned_abs() as f64 / PI).ln()).exp();
    Ok(scale * gamma(gamma_arg)? * zagier_l(delta, s)?)
}

/// The density m_t(x) of sum_n L(1/2 + it, n^2 - 4), with the
/// x-independent constants evaluated once.
#[derive(Debug, Clone, Copy)]
pub struct Density {
    t: f64,
    /// t = 0: (shift, 1/(2 zeta(3/2))); t != 0: (A, B)
    first: Complex64,
    second: Complex64,
}

impl Density {
    pub fn new(t: f64) -> Result<Self> {
        if t == 0.0 {
            let z32 = zeta(c(1.5))?.re;
            let shift = -PI / 2.0 + 3.0 * EULER_GAMMA
                - 2.0 * zeta_prime_three_halves() / z32
                - (8.0 * PI).ln();
            return Ok(Density {
                t,
                first: c(shift),
                second: c(1.0 / (2.0 * z32)),
            });
        }
        let it = Complex64::new(0.0, t);
        let a = zeta(1.0 + 2.0 * it)? / zeta(1.5 + it)?;
        // zeta(2it) rather than zeta(it): with zeta(it) the t -> 0 limit
        // misses the t = 0 branch by log(2 pi)/(2 zeta(3/2)) and the
        // averages drift off linearly in X
        let b = c(2.0).powc(0.5 + it)
            * (PI / 4.0 + it * PI / 2.0).sin()
            * c(PI).powc(-it)
            * zeta(2.0 * it)?
            / zeta(1.5 - it)?
            * gamma(it)?;
        Ok(Density {
            t,
            first: a,
            second: b,
        })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn eval(&self, x: f64) -> Result<Complex64> {
        if !(x > 2.0) {
            return Err(LabError::pre(format!("the density needs x > 2, got {x}")));
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: f64) -> Complex64 {
        let log_q = (x * x - 4.0).ln();
        if self.t == 0.0 {
            self.second * (log_q + self.first)
        } else {
            self.first + self.second * Complex64::new(0.0, -self.t * log_q).exp()
        }
    }
}

/// m_t(x); t = 0 selects the logarithmic branch.
pub fn density_m(t: f64, x: f64) -> Result<Complex64> {
    Density::new(t)?.eval(x)
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CentralValueAverage {
    pub x_max: u64,
    pub t: f64,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub sum: Complex64,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub integral: Complex64,
    pub residual: f64,
}

/// Absolute error target of the density integral.
const DENSITY_QUAD_TOL: f64 = 1e-8;

/// `int_3^X m_t(x) dx`, split at powers of two above 3.
pub fn density_integral(t: f64, x_max: f64) -> Result<Complex64> {
    let density = Density::new(t)?;
    let f = |x: f64| density.eval_unchecked(x);
    let mut total = c(0.0);
    let mut lo = 3.0;
    while lo < x_max {
        let hi = (2.0 * lo).min(x_max);
        total += simpson_complex(&f, lo, hi, DENSITY_QUAD_TOL * (hi - lo) / x_max);
        lo = hi;
    }
    Ok(total)
}

/// sum_{3 <= n <= X} L(1/2 + it, n^2 - 4) against int_3^X m_t(x) dx.
pub fn average_central_values(x_max: u64, t: f64) -> Result<CentralValueAverage> {
    if x_max < 3 {
        return Err(LabError::pre(format!("X must be at least 3, got {x_max}")));
    }
    if x_max > crate::config::AVERAGE_X_MAX {
        return Err(LabError::pre(format!(
            "X = {x_max} exceeds the desk-scale limit {}",
            crate::config::AVERAGE_X_MAX
        )));
    }
    if t.abs() > 2.0 {
        return Err(LabError::pre(format!("|t| must be at most 2, got {t}")));
    }
    let s = Complex64::new(0.5, t);
    let count = (x_max - 2) as usize;
    let values = map_indexed(count, |i| {
        let n = (i + 3) as i64;
        zagier_l(n * n - 4, s)
    });
    let values: Vec<Complex64> = values.into_iter().collect::<Result<_>>()?;
    let sum = pairwise_sum_complex(&values);
    let integral = density_integral(t, x_max as f64)?;
    Ok(CentralValueAverage {
        x_max,
        t,
        sum,
        integral,
        residual: (sum - integral).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_ell_factor_small_cases() {
        let s = Complex64::new(0.3, 1.7);
        assert_eq!(t_ell_factor(5, 1, s), c(1.0));
        let expect = tau_s(2, s) + 1.0 / 2f64.sqrt();
        assert!((t_ell_factor(5, 2, s) - expect).norm() < 1e-14);
        // ell = 3 for D = 8: chi_8(3) = -1
        let s = c(2.0);
        let expect = tau_s(3, s) + 1.0 / 3f64.sqrt();
        assert!((t_ell_factor(8, 3, s) - expect).norm() < 1e-14);
    }

    #[test]
    fn t_ell_is_symmetric() {
        for ell in 1..40u64 {
            let s = Complex64::new(0.2, 3.1);
            let a = t_ell_factor(-7, ell, s);
            let b = t_ell_factor(-7, ell, 1.0 - s);
            assert!((a - b).norm() < 1e-11 * a.norm().max(1.0), "ell={ell}");
        }
    }

    #[test]
    fn leibniz_value() {
        let v = dirichlet_l(-4, c(1.0)).unwrap();
        assert!((v - PI / 4.0).norm() < 1e-12);
    }

    #[test]
    fn density_rejects_small_x() {
        assert!(density_m(0.0, 2.0).is_err());
        assert!(density_m(0.5, 1.0).is_err());
    }
}
