//! Quadratic character sums, the bilinear sum over (a^2 - 4 | r), and the
//! mean values of rho(c, a) over windows of a and c.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::analysis::alpha_beta;
use crate::arith::{is_fundamental, kronecker};
use crate::config::{BILINEAR_MAX, CHAR_SUM_X_MAX, MEAN_VALUE_BUDGET};
use crate::counting::rho_ca_table;
use crate::error::{LabError, Result};
use crate::par::{map_indexed, pairwise_sum, pairwise_sum_complex};

/// Period tables are built for conductors up to this size.
const PERIOD_TABLE_MAX: u64 = 10_000_000;

/// `sum_{n <= x} (D/n)` for a fundamental discriminant D.
pub fn char_partial_sum(d: i64, x: u64) -> Result<i64> {
    if !is_fundamental(d) {
        return Err(LabError::pre(format!("{d} is not a fundamental discriminant")));
    }
    if x > CHAR_SUM_X_MAX {
        return Err(LabError::pre(format!(
            "x = {x} exceeds the limit {CHAR_SUM_X_MAX}"
        )));
    }
    let q = d.unsigned_abs();
    if q > x || q > PERIOD_TABLE_MAX {
        return Ok((1..=x).map(|n| kronecker(d, n as i64) as i64).sum());
    }
    // chi_D has period |D|
    let mut prefix = Vec::with_capacity(q as usize + 1);
    let mut acc = 0i64;
    prefix.push(0);
    for n in 1..=q {
        acc += kronecker(d, n as i64) as i64;
        prefix.push(acc);
    }
    let periods = (x / q) as i64;
    Ok(periods * prefix[q as usize] + prefix[(x % q) as usize])
}

/// A character sum next to the envelopes it is compared with.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct EnvelopeReport {
    pub d: i64,
    pub x: u64,
    pub theta: f64,
    pub sum: i64,
    /// |D|^(1/2) log |D|
    pub polya_vinogradov: f64,
    /// x^alpha |D|^beta with alpha, beta determined by theta
    pub hybrid_envelope: f64,
    /// x^(1/2)
    pub lindelof_envelope: f64,
    pub ratio_polya_vinogradov: f64,
    pub ratio_hybrid: f64,
    pub ratio_lindelof: f64,
}

pub fn envelope_report(d: i64, x: u64, theta: f64) -> Result<EnvelopeReport> {
    if !(0.0..0.25).contains(&theta) {
        return Err(LabError::pre(format!("theta must lie in [0, 1/4), got {theta}")));
    }
    if x == 0 {
        return Err(LabError::pre("x must be positive"));
    }
    let sum = char_partial_sum(d, x)?;
    let q = d.unsigned_abs() as f64;
    let (alpha, beta) = alpha_beta(theta);
    let pv = q.sqrt() * q.ln();
    let hybrid = (x as f64).powf(alpha) * q.powf(beta);
    let lindelof = (x as f64).sqrt();
    let s = sum as f64;
    Ok(EnvelopeReport {
        d,
        x,
        theta,
        sum,
        polya_vinogradov: pv,
        hybrid_envelope: hybrid,
        lindelof_envelope: lindelof,
        ratio_polya_vinogradov: s / pv,
        ratio_hybrid: s / hybrid,
        ratio_lindelof: s / lindelof,
    })
}

/// `sum_{R < r <= 2R} sum_{B < a <= A + B} ((a^2 - 4)/r)`.
pub fn bilinear_sum(r: u64, a_len: u64, b: i64) -> Result<i64> {
    if r == 0 || a_len == 0 || r > BILINEAR_MAX || a_len > BILINEAR_MAX {
        return Err(LabError::pre(format!(
            "bilinear sum needs 1 <= R, A <= {BILINEAR_MAX}, got R = {r}, A = {a_len}"
        )));
    }
    let rows = map_indexed(r as usize, |i| {
        let modulus = r as i64 + 1 + i as i64;
        let mut row = 0i64;
        for a in (b + 1)..=(b + a_len as i64) {
            // for r > 0, (m | r) depends on m mod 4r only
            let m = (a as i128 * a as i128 - 4).rem_euclid(modulus as i128 * 4) as i64;
            row += kronecker(m, modulus) as i64;
        }
        row
    });
    Ok(rows.iter().sum())
}

/// The window `B < a <= A + B`, `c <= C` of the mean value F(A, B, C).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SumWindow {
    pub a: u64,
    pub b: i64,
    pub c: u64,
}

impl SumWindow {
    pub fn new(a: u64, b: i64, c: u64) -> Result<Self> {
        if a == 0 || c == 0 {
            return Err(LabError::pre(format!(
                "window needs A >= 1 and C >= 1, got A = {a}, C = {c}"
            )));
        }
        Ok(SumWindow { a, b, c })
    }

    fn check_budget(&self, c_factor: u64) -> Result<()> {
        let work = (self.a.saturating_add(self.c)).saturating_mul(self.c * c_factor);
        if self.a.saturating_mul(self.c) > MEAN_VALUE_BUDGET || work > 20 * MEAN_VALUE_BUDGET {
            return Err(LabError::pre(format!(
                "window A = {}, C = {} exceeds the work budget",
                self.a, self.c
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct MeanValue {
    pub window: SumWindow,
    pub value: u64,
    /// (6/pi^2) A C
    pub main_term: f64,
    pub residual: f64,
}

/// Sum of `table[a mod c]` over `lo <= a <= hi`.
fn window_sum(table: &[u32], lo: i64, hi: i64) -> u64 {
    if hi < lo {
        return 0;
    }
    let c = table.len() as i64;
    let len = hi - lo + 1;
    let full: u64 = table.iter().map(|&v| v as u64).sum();
    let mut total = (len / c) as u64 * full;
    let start = lo.rem_euclid(c);
    for k in 0..len % c {
        total += table[((start + k) % c) as usize] as u64;
    }
    total
}

/// `F(A, B, C) = sum_{B < a <= A + B} sum_{c <= C} rho(c, a)`.
pub fn mean_value_f(w: SumWindow) -> Result<MeanValue> {
    let w = SumWindow::new(w.a, w.b, w.c)?;
    w.check_budget(1)?;
    let per_c = map_indexed(w.c as usize, |i| {
        let table = rho_ca_table(i as u64 + 1);
        window_sum(&table, w.b + 1, w.b + w.a as i64)
    });
    let value: u64 = per_c.iter().sum();
    let main_term = 6.0 / (PI * PI) * w.a as f64 * w.c as f64;
    Ok(MeanValue {
        window: w,
        value,
        main_term,
        residual: value as f64 - main_term,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct TwistedMeanValue {
    pub window: SumWindow,
    pub x: f64,
    pub symmetric: bool,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub value: Complex64,
    /// 6 C sin(2 pi A x)/(pi^3 x); 12 A C / pi^2 at x = 0
    pub main_term: f64,
}

/// `F_x = sum_{C < c <= 2C} sum_a rho(c, a) e((B - a) x)` with `a` over
/// `|B - a| <= A` when `symmetric`, otherwise over `B < a <= A + B`.
pub fn mean_value_fx(w: SumWindow, x: f64, symmetric: bool) -> Result<TwistedMeanValue> {
    let w = SumWindow::new(w.a, w.b, w.c)?;
    w.check_budget(2)?;
    if !x.is_finite() {
        return Err(LabError::pre("x must be finite"));
    }
    let (lo, hi) = if symmetric {
        (w.b - w.a as i64, w.b + w.a as i64)
    } else {
        (w.b + 1, w.b + w.a as i64)
    };
    // e((B - a) x) for each a in the window
    let phases: Vec<Complex64> = (lo..=hi)
        .map(|a| {
            let angle = TAU * ((w.b - a) as f64 * x).rem_euclid(1.0);
            Complex64::new(angle.cos(), angle.sin())
        })
        .collect();
    let per_c = map_indexed(w.c as usize, |i| {
        let c = w.c + 1 + i as u64;
        let table = rho_ca_table(c);
        let terms: Vec<Complex64> = (lo..=hi)
            .zip(&phases)
            .map(|(a, &ph)| table[a.rem_euclid(c as i64) as usize] as f64 * ph)
            .collect();
        pairwise_sum_complex(&terms)
    });
    let value = pairwise_sum_complex(&per_c);
    let main_term = if x == 0.0 {
        12.0 * w.a as f64 * w.c as f64 / (PI * PI)
    } else {
        6.0 * w.c as f64 * (TAU * w.a as f64 * x).sin() / (PI.powi(3) * x)
    };
    Ok(TwistedMeanValue {
        window: w,
        x,
        symmetric,
        value,
        main_term,
    })
}

/// Empirical constant kappa = |residual| / (A + C^2) of a mean value.
pub fn residual_constant(m: &MeanValue) -> f64 {
    m.residual.abs() / (m.window.a as f64 + (m.window.c as f64).powi(2))
}

/// Mean of a slice with deterministic pairwise summation.
pub fn mean(xs: &[f64]) -> f64 {
    pairwise_sum(xs) / xs.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_sum_examples() {
        assert_eq!(char_partial_sum(5, 5).unwrap(), 0);
        assert_eq!(char_partial_sum(1, 10).unwrap(), 10);
        assert_eq!(char_partial_sum(-4, 4).unwrap(), 0);
        assert!(char_partial_sum(20, 4).is_err());
    }

    #[test]
    fn window_sum_wraps() {
        let table = vec![1, 2, 3];
        assert_eq!(window_sum(&table, 0, 2), 6);
        assert_eq!(window_sum(&table, -1, 0), 3 + 1);
        assert_eq!(window_sum(&table, 5, 4), 0);
        assert_eq!(window_sum(&table, 2, 9), 3 + 6 + 6 + 1);
    }

    #[test]
    fn mean_value_examples() {
        let m = mean_value_f(SumWindow { a: 2, b: 2, c: 2 }).unwrap();
        assert_eq!(m.value, 3);
        let m = mean_value_f(SumWindow { a: 1, b: 1, c: 1 }).unwrap();
        assert_eq!(m.value, 1);
    }
}
