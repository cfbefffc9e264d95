//! Exponential sums over the discrete spectrum of the modular surface and
//! the kernel-smoothed geodesic error term.
//!
//! Spectral parameters come from an [`EigenvalueTable`], which is only
//! trusted up to its completeness height: every sum truncated at T refuses
//! T beyond `complete_to`, since it would silently undercount.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::analysis::BoundProfile;
use crate::config::{SPECTRAL_CUTOFF_EPS, TOLERANCES};
use crate::error::{LabError, Result};
use crate::par::{map_slice, pairwise_sum, pairwise_sum_complex};
use crate::quad::{simpson, simpson_complex};
use crate::quadforms::GeodesicTable;

/// Every Maass cusp form on SL2(Z) has t_j > 9.
const FIRST_EIGENVALUE_FLOOR: f64 = 9.0;

const BUNDLED: &str = include_str!("../data/modular_eigenvalues.txt");

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct EigenvalueTable {
    t_values: Vec<f64>,
    complete_to: f64,
    source: String,
}

impl EigenvalueTable {
    pub fn new(t_values: Vec<f64>, complete_to: f64, source: impl Into<String>) -> Result<Self> {
        let Some(&last) = t_values.last() else {
            return Err(LabError::pre("an eigenvalue table needs at least one entry"));
        };
        if let Some(&bad) = t_values.iter().find(|t| !(**t > FIRST_EIGENVALUE_FLOOR) || !t.is_finite()) {
            return Err(LabError::pre(format!(
                "spectral parameter {bad} is out of range (all t_j exceed 9)"
            )));
        }
        if let Some(w) = t_values.windows(2).find(|w| !(w[1] > w[0])) {
            return Err(LabError::pre(format!(
                "spectral parameters must be strictly increasing: {} then {}",
                w[0], w[1]
            )));
        }
        if !(complete_to > 0.0) || complete_to > last {
            return Err(LabError::pre(format!(
                "complete_to = {complete_to} must be positive and at most the last entry {last}"
            )));
        }
        Ok(EigenvalueTable {
            t_values,
            complete_to,
            source: source.into(),
        })
    }

    /// Parses the text format: `#` comments, one `complete_to=<real>`
    /// header, then one t_j per line.
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let err = |line: usize, message: String| LabError::Parse {
            path: path.to_path_buf(),
            line,
            message,
        };
        let mut complete_to = None;
        let mut values = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            last_line = line_no;
            if let Some(rest) = line.strip_prefix("complete_to=") {
                if complete_to.is_some() {
                    return Err(err(line_no, "duplicate complete_to header".into()));
                }
                if !values.is_empty() {
                    return Err(err(line_no, "complete_to header must precede the values".into()));
                }
                let v: f64 = rest
                    .trim()
                    .parse()
                    .map_err(|_| err(line_no, format!("bad complete_to value {rest:?}")))?;
                complete_to = Some(v);
                continue;
            }
            if complete_to.is_none() {
                return Err(err(line_no, "missing complete_to header".into()));
            }
            let t: f64 = line
                .parse()
                .map_err(|_| err(line_no, format!("not a number: {line:?}")))?;
            if !(t > FIRST_EIGENVALUE_FLOOR) || !t.is_finite() {
                return Err(err(line_no, format!("spectral parameter {t} out of range")));
            }
            if let Some(&prev) = values.last() {
                if !(t > prev) {
                    return Err(err(line_no, format!("{t} does not exceed the previous value {prev}")));
                }
            }
            values.push(t);
        }
        let Some(complete_to) = complete_to else {
            return Err(err(last_line.max(1), "missing complete_to header".into()));
        };
        if values.is_empty() {
            return Err(err(last_line.max(1), "no spectral parameters".into()));
        }
        EigenvalueTable::new(values, complete_to, path.display().to_string())
            .map_err(|e| err(last_line, e.to_string()))
    }

    /// The table shipped with the crate: both parities, complete to 190.
    pub fn bundled() -> &'static EigenvalueTable {
        static TABLE: OnceLock<EigenvalueTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            EigenvalueTable::parse(BUNDLED, Path::new("data/modular_eigenvalues.txt"))
                .expect("bundled eigenvalue table is valid")
        })
    }

    pub fn t_values(&self) -> &[f64] {
        &self.t_values
    }

    pub fn complete_to(&self) -> f64 {
        self.complete_to
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.t_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t_values.is_empty()
    }

    /// #{t_j <= t}.
    pub fn count_up_to(&self, t: f64) -> usize {
        self.t_values.partition_point(|&v| v <= t)
    }

    /// The entries up to `t`, refusing heights beyond completeness.
    pub fn up_to(&self, t: f64) -> Result<&[f64]> {
        if t > self.complete_to {
            return Err(LabError::pre(format!(
                "T = {t} exceeds the completeness height {} of {}",
                self.complete_to, self.source
            )));
        }
        Ok(&self.t_values[..self.count_up_to(t)])
    }

    /// count(t_j <= complete_to) / (complete_to^2 / 12).
    pub fn weyl_ratio(&self) -> f64 {
        self.count_up_to(self.complete_to) as f64 / (self.complete_to.powi(2) / 12.0)
    }
}

pub fn load_eigenvalues(path: impl AsRef<Path>) -> Result<EigenvalueTable> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| LabError::Parse {
        path: PathBuf::from(path),
        line: 0,
        message: e.to_string(),
    })?;
    EigenvalueTable::parse(&text, path)
}

/// T^2/12 - (2T/pi) log(T/(e sqrt(pi/2))) - 131/144: the smoothed count of
/// t_j <= T including its lower-order terms.
pub fn weyl_count(t: f64) -> f64 {
    t * t / 12.0 - 2.0 * t / PI * (t / (std::f64::consts::E * (PI / 2.0).sqrt())).ln()
        - 131.0 / 144.0
}

fn check_x(x: f64) -> Result<()> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(LabError::pre(format!("X must be a finite real >= 1, got {x}")));
    }
    Ok(())
}

/// sum_{|t_j| <= T} X^{i t_j}, symmetrised over +-t_j.
pub fn spectral_sum(table: &EigenvalueTable, x: f64, t: f64) -> Result<Complex64> {
    check_x(x)?;
    let ts = table.up_to(t)?;
    let log_x = x.ln();
    let terms = map_slice(ts, |&tj| {
        let z = Complex64::from_polar(1.0, tj * log_x);
        z + z.conj()
    });
    Ok(pairwise_sum_complex(&terms))
}

/// sum_{t_j > 0} X^{i t_j} e^{-t_j/T} over the whole table.
pub fn weighted_spectral_sum(table: &EigenvalueTable, x: f64, t: f64) -> Result<Complex64> {
    check_x(x)?;
    if !(t >= 0.0) || !t.is_finite() {
        return Err(LabError::pre(format!("T must be finite and nonnegative, got {t}")));
    }
    if t == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let tail = (-table.complete_to / t).exp();
    if tail >= TOLERANCES.damping_tail {
        return Err(LabError::pre(format!(
            "damping insufficient: e^(-{}/{t}) = {tail:.2e} is not below {:e}",
            table.complete_to,
            TOLERANCES.damping_tail
        )));
    }
    let log_x = x.ln();
    let terms = map_slice(table.t_values(), |&tj| Complex64::from_polar((-tj / t).exp(), tj * log_x));
    Ok(pairwise_sum_complex(&terms))
}

/// T X^E + T X^(2 delta - 1 - E) + T^(3/2) (log T)^2 for the exponents of a
/// bound profile.
pub fn spectral_envelope(profile: &BoundProfile, x: f64, t: f64) -> f64 {
    let e = profile.e_exponent();
    t * x.powf(e) + t * x.powf(2.0 * profile.delta_exp - 1.0 - e) + t.powf(1.5) * t.ln().powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum KernelShape {
    /// exp(-1/(1 - v^2)) on v in (-1, 1)
    Bump,
}

/// A smooth probability density supported on [Y, 2Y].
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Kernel {
    y: f64,
    shape: KernelShape,
    /// Reciprocal of the integral of the unscaled profile over [Y, 2Y].
    normalization: f64,
}

/// Integral of exp(-1/(1 - v^2)) over (-1, 1).
fn bump_mass() -> f64 {
    static MASS: OnceLock<f64> = OnceLock::new();
    *MASS.get_or_init(|| {
        let f = |v: f64| bump(v);
        // split at the inflection region; the profile is flat near +-1
        [-1.0, -0.5, 0.0, 0.5, 1.0]
            .windows(2)
            .map(|w| simpson(&f, w[0], w[1], 1e-15))
            .sum()
    })
}

fn bump(v: f64) -> f64 {
    if v.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - v * v)).exp()
    }
}

impl Kernel {
    pub fn bump(y: f64) -> Result<Self> {
        if !(y > 0.0) || !y.is_finite() {
            return Err(LabError::pre(format!("kernel scale Y must be positive, got {y}")));
        }
        Ok(Kernel {
            y,
            shape: KernelShape::Bump,
            normalization: 2.0 / (y * bump_mass()),
        })
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn shape(&self) -> KernelShape {
        self.shape
    }

    pub fn support(&self) -> (f64, f64) {
        (self.y, 2.0 * self.y)
    }

    pub fn eval(&self, u: f64) -> f64 {
        let v = 2.0 * (u - self.y) / self.y - 1.0;
        self.normalization * bump(v)
    }

    /// Numerical total integral; 1 up to quadrature error.
    pub fn mass(&self) -> f64 {
        let f = |u: f64| self.eval(u);
        let (a, b) = self.support();
        let h = (b - a) / 4.0;
        (0..4)
            .map(|k| simpson(&f, a + k as f64 * h, a + (k + 1) as f64 * h, 1e-15))
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SmoothedError {
    pub x: f64,
    pub y: f64,
    /// x^(1+eps)/Y
    pub cutoff: f64,
    pub terms: usize,
    /// int (Psi(x+u) - x - u) k(u) du
    pub direct: f64,
    /// sum_{|t_j| <= cutoff} (1/s_j) int (x+u)^{s_j} k(u) du
    pub spectral: f64,
    pub difference: f64,
}

/// E(x; k) computed from Psi directly and from the spectral expansion.
pub fn smoothed_error(table: &EigenvalueTable, x: f64, y: f64, kernel: &Kernel) -> Result<SmoothedError> {
    if !(x >= 4.0) || !x.is_finite() {
        return Err(LabError::pre(format!("x must be at least 4, got {x}")));
    }
    if !(y >= x.sqrt() && y <= x) {
        return Err(LabError::pre(format!("Y = {y} must lie in [sqrt(x), x] = [{}, {x}]", x.sqrt())));
    }
    if kernel.y() != y {
        return Err(LabError::pre(format!(
            "kernel is built for Y = {}, not {y}",
            kernel.y()
        )));
    }
    let cutoff = x.powf(1.0 + SPECTRAL_CUTOFF_EPS) / y;
    let ts = table.up_to(cutoff)?;
    let geo = GeodesicTable::build(x + 2.0 * y)?;
    let direct = direct_smoothed_error(&geo, x, kernel)?;

    let (a, b) = kernel.support();
    let tol = 1e-12;
    let terms = map_slice(ts, |&tj| {
        let s = Complex64::new(0.5, tj);
        let f = |u: f64| Complex64::new(x + u, 0.0).powc(s) * kernel.eval(u);
        let integral = simpson_complex(&f, a, b, tol * x.sqrt());
        // t_j and -t_j give conjugate terms
        2.0 * (integral / s).re
    });
    let spectral = pairwise_sum(&terms);
    Ok(SmoothedError {
        x,
        y,
        cutoff,
        terms: 2 * ts.len(),
        direct,
        spectral,
        difference: direct - spectral,
    })
}

/// int_Y^{2Y} (Psi(x+u) - x - u) k(u) du with Psi constant between jumps.
fn direct_smoothed_error(geo: &GeodesicTable, x: f64, kernel: &Kernel) -> Result<f64> {
    let (a, b) = kernel.support();
    let f = |u: f64| kernel.eval(u);
    let mut cuts = vec![a];
    cuts.extend(
        geo.jump_points()
            .iter()
            .map(|&n| n - x)
            .filter(|&u| u > a && u < b),
    );
    cuts.push(b);
    let mut acc = 0.0;
    for w in cuts.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let psi = geo.psi(x + mid)?.psi;
        acc += psi * simpson(&f, w[0], w[1], 1e-14);
    }
    // int (x + u) k(u) du = x + 3Y/2 by the symmetry of the bump
    Ok(acc - x - 1.5 * kernel.y())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_mass_value() {
        assert!((bump_mass() - 0.443_993_816_168_079_4).abs() < 1e-12);
    }

    #[test]
    fn kernel_is_normalized() {
        for y in [1.0, 100.0, 1e4] {
            let k = Kernel::bump(y).unwrap();
            assert!((k.mass() - 1.0).abs() < 1e-8);
            assert_eq!(k.eval(y), 0.0);
            assert_eq!(k.eval(2.0 * y), 0.0);
            assert!(k.eval(1.5 * y) > 0.0);
        }
    }

    #[test]
    fn parse_rejects_bad_input() {
        let p = Path::new("t.txt");
        assert!(EigenvalueTable::parse("", p).is_err());
        assert!(EigenvalueTable::parse("complete_to=10\n", p).is_err());
        assert!(EigenvalueTable::parse("9.6\n", p).is_err());
        let e = EigenvalueTable::parse("complete_to=10\n9.6\n9.5\n", p).unwrap_err();
        assert!(matches!(e, LabError::Parse { line: 3, .. }));
        let e = EigenvalueTable::parse("# c\ncomplete_to=10\n8.0\n", p).unwrap_err();
        assert!(matches!(e, LabError::Parse { line: 3, .. }));
        let t = EigenvalueTable::parse("# c\ncomplete_to=10\n9.5\n\n12.1\n", p).unwrap();
        assert_eq!(t.len(), 2);
    }
}
