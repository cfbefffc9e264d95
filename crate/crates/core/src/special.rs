//! Complex Gamma, Riemann and Hurwitz zeta, and the upper incomplete Gamma
//! function.
//!
//! Gamma uses the g = 7, n = 9 Lanczos approximation with reflection below
//! re(s) = 1/2. Zeta and Hurwitz zeta use Euler-Maclaurin summation with
//! `N = 10|im s| + 30` direct terms and twelve Bernoulli corrections.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{LabError, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// B_2, B_4, ..., B_24.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub(crate) fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round()
}

fn lanczos_gamma(z: Complex64) -> Complex64 {
    // z >= 1/2 in real part
    let z = z - 1.0;
    let mut acc = c(LANCZOS[0]);
    for (i, &coef) in LANCZOS.iter().enumerate().skip(1) {
        acc += coef / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * ((z + 0.5) * t.ln() - t).exp() * acc
}

/// Gamma(s); pole error at s = 0, -1, -2, ...
pub fn gamma(s: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(s) {
        return Err(LabError::Pole {
            function: "gamma",
            re: s.re,
            im: s.im,
        });
    }
    if s.re < 0.5 {
        let denom = (PI * s).sin() * lanczos_gamma(1.0 - s);
        Ok(PI / denom)
    } else {
        Ok(lanczos_gamma(s))
    }
}

fn pole(function: &'static str, s: Complex64) -> LabError {
    LabError::Pole {
        function,
        re: s.re,
        im: s.im,
    }
}

/// Euler-Maclaurin evaluation of sum_{k >= 0} (k + a)^(-s).
fn hurwitz_em(s: Complex64, a: f64) -> Complex64 {
    euler_maclaurin(s, a, false)
}

/// zeta(s, a) - 1/(s - 1); finite at s = 1.
pub(crate) fn hurwitz_without_pole(s: Complex64, a: f64) -> Complex64 {
    euler_maclaurin(s, a, true)
}

/// (x^(1-s) - 1)/(s - 1), continuous at s = 1 where it equals -ln x.
fn regular_pole_term(x: f64, s: Complex64) -> Complex64 {
    let ln_x = x.ln();
    let u = (1.0 - s) * ln_x;
    let ratio = if u.norm() < 1e-3 {
        // (e^u - 1)/u
        1.0 + u / 2.0 + u * u / 6.0 + u * u * u / 24.0
    } else {
        (u.exp() - 1.0) / u
    };
    -ln_x * ratio
}

fn euler_maclaurin(s: Complex64, a: f64, drop_pole: bool) -> Complex64 {
    let n_terms = (10.0 * s.im.abs() + 30.0).ceil() as usize;
    let mut head = Complex64::new(0.0, 0.0);
    for k in 0..n_terms {
        head += (-s * (k as f64 + a).ln()).exp();
    }
    let x = n_terms as f64 + a;
    let x_pow = (-s * x.ln()).exp();
    let tail = if drop_pole {
        regular_pole_term(x, s)
    } else {
        x * x_pow / (s - 1.0)
    };
    let mut total = head + tail + 0.5 * x_pow;

    // r_j = (s)_{2j-1} x^{-s-2j+1} / (2j)!
    let mut r = s * x_pow / x / 2.0;
    for (j, &b) in BERNOULLI.iter().enumerate() {
        let term = b * r;
        total += term;
        if term.norm() <= 1e-18 * total.norm() {
            break;
        }
        let m = 2.0 * (j as f64 + 1.0);
        r = r * (s + (m - 1.0)) * (s + m) / (x * x * (m + 1.0) * (m + 2.0));
    }
    total
}

/// Riemann zeta(s); pole error at s = 1.
///
/// For re(s) < 0 the direct sum cancels badly, so the value is taken from
/// the functional equation instead.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    if s == c(1.0) {
        return Err(pole("zeta", s));
    }
    if s.re < 0.0 {
        if is_nonpositive_integer(s) && s.re % 2.0 == 0.0 {
            return Ok(c(0.0));
        }
        let factor = c(2.0).powc(s) * c(PI).powc(s - 1.0) * (PI * s / 2.0).sin();
        return Ok(factor * gamma(1.0 - s)? * hurwitz_em(1.0 - s, 1.0));
    }
    Ok(hurwitz_em(s, 1.0))
}

/// Hurwitz zeta(s, a) for a in (0, 1]; pole error at s = 1.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(LabError::pre(format!(
            "hurwitz_zeta needs a in (0, 1], got {a}"
        )));
    }
    if s == c(1.0) {
        return Err(pole("hurwitz_zeta", s));
    }
    Ok(hurwitz_em(s, a))
}

/// zeta'(3/2) from Richardson-extrapolated central differences, computed
/// once and cached.
pub fn zeta_prime_three_halves() -> f64 {
    static CACHE: OnceLock<f64> = OnceLock::new();
    *CACHE.get_or_init(|| {
        let f = |x: f64| hurwitz_em(c(x), 1.0).re;
        let centre = 1.5;
        let levels = 5;
        let mut table = vec![vec![0.0; levels]; levels];
        let mut h = 0.1;
        for i in 0..levels {
            table[i][0] = (f(centre + h) - f(centre - h)) / (2.0 * h);
            let mut factor = 4.0;
            for j in 1..=i {
                table[i][j] =
                    table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
                factor *= 4.0;
            }
            h /= 2.0;
        }
        table[levels - 1][levels - 1]
    })
}

/// Upper incomplete Gamma function Gamma(a, x) for complex a and x > 0.
pub fn gamma_upper(a: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0) {
        return Err(LabError::pre(format!("gamma_upper needs x > 0, got {x}")));
    }
    if is_nonpositive_integer(a) {
        // Gamma(a, x) = (Gamma(a + 1, x) - x^a e^{-x}) / a, from Gamma(0, x).
        let mut value = c(exp_integral_e1(x)?);
        let mut order = 0.0;
        while order > a.re {
            order -= 1.0;
            value = (value - x.powf(order) * (-x).exp()) / order;
        }
        return Ok(value);
    }
    if x < (a.re + 1.0).max(1.0) {
        Ok(gamma(a)? - lower_series(a, x)?)
    } else {
        upper_fraction(a, x)
    }
}

/// gamma(a, x) = x^a e^{-x} sum_k x^k / (a (a+1) ... (a+k)).
fn lower_series(a: Complex64, x: f64) -> Result<Complex64> {
    let mut term = 1.0 / a;
    let mut sum = term;
    for k in 1..10_000 {
        term = term * x / (a + k as f64);
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            return Ok(sum * (a * x.ln() - x).exp());
        }
    }
    Err(LabError::Numerical(format!(
        "incomplete gamma series did not converge at a = {a}, x = {x}"
    )))
}

/// Modified Lentz evaluation of the continued fraction for Gamma(a, x).
fn upper_fraction(a: Complex64, x: f64) -> Result<Complex64> {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut cc = c(1.0 / TINY);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..20_000 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.norm() < TINY {
            d = c(TINY);
        }
        cc = b + an / cc;
        if cc.norm() < TINY {
            cc = c(TINY);
        }
        d = 1.0 / d;
        let delta = d * cc;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            return Ok(h * (a * x.ln() - x).exp());
        }
    }
    Err(LabError::Numerical(format!(
        "incomplete gamma continued fraction did not converge at a = {a}, x = {x}"
    )))
}

/// E_1(x) = Gamma(0, x) for x > 0.
fn exp_integral_e1(x: f64) -> Result<f64> {
    if x < 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..200 {
            term *= -x / k as f64;
            let add = term / k as f64;
            sum += add;
            if add.abs() < 1e-18 {
                break;
            }
        }
        Ok(-EULER_GAMMA - x.ln() - sum)
    } else {
        Ok(upper_fraction(c(0.0), x)?.re)
    }
}
