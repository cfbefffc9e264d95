//! The `geolab` command line: one subcommand per experiment, each producing
//! a table of rows as CSV or JSON.
//!
//! A run is fully described by a [`RunConfig`], which can be given as a JSON
//! file (`--config`) or assembled from the subcommand and flags. Flags on the
//! command line override the file. Output is deterministic: the same config
//! gives byte-identical CSV for any thread count, because every parallel map
//! in the library reduces in a fixed order.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::analysis::{exponent_calculus, fit_exponent, theta_constraint_check, THETA_MAX};
use crate::config::Tolerances;
use crate::error::{LabError, Result};
use crate::lseries::{average_central_values, completed_zagier, zagier_l};
use crate::quadforms::GeodesicTable;
use crate::spectral::{
    load_eigenvalues, smoothed_error, spectral_envelope, spectral_sum, weighted_spectral_sum,
    EigenvalueTable, Kernel,
};
use crate::sums::{envelope_report, mean_value_f, mean_value_fx, residual_constant, SumWindow};

/// Upper limit on the number of points a grid may expand to.
const GRID_MAX_POINTS: usize = 100_000;

/// A parameter grid: an explicit list, or a range with linear or
/// logarithmic step.
///
/// On the command line: `1,2,5` or `1/12` (fractions allowed in lists),
/// `250..2000:250` (linear, step 250) and `1e3..1e6*2` (logarithmic, the
/// interval is divided into round(log(stop/start)/log 2) equal log-steps so
/// both endpoints are included).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    List(Vec<f64>),
    Range {
        start: f64,
        stop: f64,
        step: f64,
        #[serde(default)]
        log: bool,
    },
}

fn parse_number(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| format!("bad number {s:?}"))?;
            let q: f64 = q.trim().parse().map_err(|_| format!("bad number {s:?}"))?;
            p / q
        }
        None => s.parse().map_err(|_| format!("bad number {s:?}"))?,
    };
    if !v.is_finite() {
        return Err(format!("{s:?} is not finite"));
    }
    Ok(v)
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if let Some((start, rest)) = s.split_once("..") {
            let start = parse_number(start)?;
            let (stop, step, log) = if let Some((stop, f)) = rest.split_once('*') {
                (parse_number(stop)?, parse_number(f)?, true)
            } else if let Some((stop, st)) = rest.split_once(':') {
                (parse_number(stop)?, parse_number(st)?, false)
            } else {
                return Err(format!("range {s:?} needs a step (a..b:step or a..b*factor)"));
            };
            return Ok(Grid::Range {
                start,
                stop,
                step,
                log,
            });
        }
        let values = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(parse_number)
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Grid::List(values))
    }
}

impl Grid {
    pub fn values(&self) -> Result<Vec<f64>> {
        let values = match *self {
            Grid::List(ref v) => v.clone(),
            Grid::Range {
                start,
                stop,
                step,
                log,
            } => {
                if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
                    return Err(LabError::pre("grid bounds must be finite"));
                }
                if stop < start {
                    return Err(LabError::pre(format!("empty range {start}..{stop}")));
                }
                if log {
                    if !(start > 0.0) || !(step > 1.0) {
                        return Err(LabError::pre(
                            "a logarithmic range needs start > 0 and factor > 1",
                        ));
                    }
                    let n = ((stop / start).ln() / step.ln()).round().max(0.0) as usize;
                    if n >= GRID_MAX_POINTS {
                        return Err(LabError::pre("grid has too many points"));
                    }
                    if n == 0 {
                        vec![start]
                    } else {
                        let ratio = (stop / start).ln() / n as f64;
                        (0..=n)
                            .map(|k| if k == n { stop } else { start * (ratio * k as f64).exp() })
                            .collect()
                    }
                } else {
                    if !(step > 0.0) {
                        return Err(LabError::pre("grid step must be positive"));
                    }
                    let n = ((stop - start) / step * (1.0 + 1e-12)).floor() as usize;
                    if n >= GRID_MAX_POINTS {
                        return Err(LabError::pre("grid has too many points"));
                    }
                    (0..=n).map(|k| start + k as f64 * step).collect()
                }
            }
        };
        if values.is_empty() {
            return Err(LabError::pre("empty grid"));
        }
        if values.len() > GRID_MAX_POINTS {
            return Err(LabError::pre("grid has too many points"));
        }
        Ok(values)
    }

    fn integers(&self, name: &str) -> Result<Vec<i64>> {
        self.values()?
            .into_iter()
            .map(|v| {
                if v.fract() != 0.0 || v.abs() > 9.0e15 {
                    Err(LabError::pre(format!("{name} must be an integer, got {v}")))
                } else {
                    Ok(v as i64)
                }
            })
            .collect()
    }

    fn naturals(&self, name: &str) -> Result<Vec<u64>> {
        self.integers(name)?
            .into_iter()
            .map(|v| {
                u64::try_from(v)
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| LabError::pre(format!("{name} must be positive, got {v}")))
            })
            .collect()
    }
}

fn zero_grid() -> Grid {
    Grid::List(vec![0.0])
}

fn default_theta() -> f64 {
    THETA_MAX
}

fn default_y_exponent() -> f64 {
    0.75
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Psi(x) and E(x) = Psi(x) - x over a grid of x, with the fitted
    /// exponent of |E(x)|
    Psi {
        #[arg(long, allow_hyphen_values = true)]
        x: Grid,
    },
    /// Zagier L-series L(s, delta) with its functional-equation residual
    Zagier {
        #[arg(long, allow_hyphen_values = true)]
        delta: Grid,
        /// real parts of s
        #[arg(long, allow_hyphen_values = true)]
        sigma: Grid,
        /// imaginary parts of s
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        #[serde(default = "zero_grid")]
        t: Grid,
    },
    /// sum_{n <= X} L(1/2 + it, n^2 - 4) against the density integral
    Avg {
        #[arg(long, allow_hyphen_values = true)]
        x: Grid,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        #[serde(default)]
        t: f64,
    },
    /// Mean values F(A, B, C), or the twisted F_x(A, B, C) with --twist
    Meanval {
        #[arg(long, allow_hyphen_values = true)]
        a: Grid,
        #[arg(long, allow_hyphen_values = true)]
        b: Grid,
        #[arg(long, allow_hyphen_values = true)]
        c: Grid,
        #[arg(long, allow_hyphen_values = true)]
        #[serde(default)]
        twist: Option<f64>,
        /// sum over |B - a| <= A instead of B < a <= A + B
        #[arg(long)]
        #[serde(default)]
        symmetric: bool,
    },
    /// Spectral exponential sums over the eigenvalue table
    Spectral {
        #[arg(long, allow_hyphen_values = true)]
        x: Grid,
        #[arg(long, allow_hyphen_values = true)]
        t: Grid,
        /// damp by e^(-t_j/T) instead of truncating at T
        #[arg(long)]
        #[serde(default)]
        weighted: bool,
        /// theta of the comparison envelope
        #[arg(long, default_value_t = THETA_MAX)]
        #[serde(default = "default_theta")]
        theta: f64,
    },
    /// The smoothed error E(x; k), directly and from the spectral expansion,
    /// with kernel scale Y = x^y_exponent
    Smoothed {
        #[arg(long, allow_hyphen_values = true)]
        x: Grid,
        #[arg(long, default_value_t = 0.75)]
        #[serde(default = "default_y_exponent")]
        y_exponent: f64,
    },
    /// Character sums sum_{n <= x} (D/n) against their envelopes
    Charsum {
        #[arg(long, allow_hyphen_values = true)]
        d: Grid,
        #[arg(long, allow_hyphen_values = true)]
        x: u64,
        #[arg(long, default_value_t = THETA_MAX)]
        #[serde(default = "default_theta")]
        theta: f64,
    },
    /// Exponent calculus over a grid of theta
    Profile {
        #[arg(long, allow_hyphen_values = true)]
        theta: Grid,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub command: Command,
    /// Not echoed into reports, so that the destination does not change
    /// the content.
    #[serde(default, skip_serializing)]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub output_format: Format,
    #[serde(default)]
    pub thread_count: Option<usize>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub eigenvalues: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            output_path: None,
            output_format: Format::Csv,
            thread_count: None,
            tolerances: Tolerances::default(),
            eigenvalues: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    UInt(u64),
    Float(f64),
    Bool(bool),
    /// empty in CSV, null in JSON
    Missing,
}

impl Cell {
    fn csv(&self, out: &mut String) {
        match *self {
            Cell::Int(v) => write!(out, "{v}"),
            Cell::UInt(v) => write!(out, "{v}"),
            Cell::Float(v) => write!(out, "{v:.14e}"),
            Cell::Bool(v) => write!(out, "{v}"),
            Cell::Missing => Ok(()),
        }
        .expect("writing to a String");
    }

    pub fn as_f64(&self) -> f64 {
        match *self {
            Cell::Int(v) => v as f64,
            Cell::UInt(v) => v as f64,
            Cell::Float(v) => v,
            Cell::Bool(v) => v as u8 as f64,
            Cell::Missing => f64::NAN,
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Cell::Int(v) => ser.serialize_i64(v),
            Cell::UInt(v) => ser.serialize_u64(v),
            Cell::Float(v) => ser.serialize_f64(v),
            Cell::Bool(v) => ser.serialize_bool(v),
            Cell::Missing => ser.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetInfo {
    pub source: String,
    pub complete_to: f64,
    pub count: usize,
}

/// Rows of one run plus optional summary values such as a fitted exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(&'static str, Cell)>,
    pub dataset: Option<DatasetInfo>,
}

struct Keyed<'a>(&'a [&'static str], &'a [Cell]);

impl Serialize for Keyed<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0.iter().zip(self.1) {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct Metadata<'a> {
    version: &'static str,
    config: &'a RunConfig,
    dataset: Option<&'a DatasetInfo>,
}

#[derive(Serialize)]
struct ErrorInfo {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    metadata: Metadata<'a>,
    rows: Vec<Keyed<'a>>,
    summary: Keyed<'a>,
    error: Option<ErrorInfo>,
}

impl Report {
    fn new(columns: &[&'static str]) -> Self {
        Report {
            columns: columns.to_vec(),
            rows: Vec::new(),
            summary: Vec::new(),
            dataset: None,
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[idx].as_f64()).collect())
    }

    pub fn summary_value(&self, name: &str) -> Option<f64> {
        self.summary.iter().find(|(k, _)| *k == name).map(|(_, v)| v.as_f64())
    }

    /// Header row, one line per row, then `# name=value` summary lines.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                cell.csv(&mut out);
            }
            out.push('\n');
        }
        for (name, value) in &self.summary {
            out.push_str("# ");
            out.push_str(name);
            out.push('=');
            value.csv(&mut out);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, config: &RunConfig) -> String {
        json_document(config, Some(self), None)
    }
}

fn json_document(config: &RunConfig, report: Option<&Report>, error: Option<&LabError>) -> String {
    let (summary_keys, summary_vals): (Vec<&'static str>, Vec<Cell>) = report
        .map(|r| r.summary.iter().cloned().unzip())
        .unwrap_or_default();
    let doc = JsonReport {
        metadata: Metadata {
            version: env!("CARGO_PKG_VERSION"),
            config,
            dataset: report.and_then(|r| r.dataset.as_ref()),
        },
        rows: report
            .map(|r| r.rows.iter().map(|row| Keyed(&r.columns, row)).collect())
            .unwrap_or_default(),
        summary: Keyed(&summary_keys, &summary_vals),
        error: error.map(|e| ErrorInfo {
            kind: if e.is_precondition() { "precondition" } else { "internal" },
            message: e.to_string(),
        }),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serialises");
    s.push('\n');
    s
}

fn f(v: f64) -> Cell {
    Cell::Float(v)
}

fn add_fit(report: &mut Report, xs: &[f64], ys: &[f64]) -> Result<()> {
    if xs.len() < 3 {
        return Ok(());
    }
    let pts: Vec<(f64, f64)> = xs.iter().copied().zip(ys.iter().copied()).collect();
    let fit = fit_exponent(&pts)?;
    report.summary.push(("fitted_exponent", f(fit.slope)));
    report.summary.push(("fit_intercept", f(fit.intercept)));
    report.summary.push(("fit_residual", f(fit.residual)));
    Ok(())
}

fn load_table(config: &RunConfig) -> Result<(EigenvalueTable, DatasetInfo)> {
    let table = match &config.eigenvalues {
        Some(path) => load_eigenvalues(path)?,
        None => EigenvalueTable::bundled().clone(),
    };
    let info = DatasetInfo {
        source: table.source().to_string(),
        complete_to: table.complete_to(),
        count: table.len(),
    };
    Ok((table, info))
}

/// Executes a run and returns its rows; output formatting is separate.
pub fn run(config: &RunConfig) -> Result<Report> {
    match config.thread_count {
        Some(0) => Err(LabError::pre("--threads must be at least 1")),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| LabError::Numerical(format!("cannot build thread pool: {e}")))?;
            pool.install(|| dispatch(config))
        }
        None => dispatch(config),
    }
}

fn dispatch(config: &RunConfig) -> Result<Report> {
    let tol = &config.tolerances;
    match &config.command {
        Command::Psi { x } => cmd_psi(&x.values()?),
        Command::Zagier { delta, sigma, t } => cmd_zagier(
            &delta.integers("delta")?,
            &sigma.values()?,
            &t.values()?,
            tol.functional_equation,
        ),
        Command::Avg { x, t } => cmd_avg(&x.naturals("X")?, *t),
        Command::Meanval {
            a,
            b,
            c,
            twist,
            symmetric,
        } => cmd_meanval(
            &a.naturals("A")?,
            &b.integers("B")?,
            &c.naturals("C")?,
            *twist,
            *symmetric,
        ),
        Command::Spectral {
            x,
            t,
            weighted,
            theta,
        } => {
            let (table, info) = load_table(config)?;
            let mut report = cmd_spectral(&table, &x.values()?, &t.values()?, *weighted, *theta, tol)?;
            report.dataset = Some(info);
            Ok(report)
        }
        Command::Smoothed { x, y_exponent } => {
            let (table, info) = load_table(config)?;
            let mut report = cmd_smoothed(&table, &x.values()?, *y_exponent, tol)?;
            report.dataset = Some(info);
            Ok(report)
        }
        Command::Charsum { d, x, theta } => cmd_charsum(&d.integers("D")?, *x, *theta),
        Command::Profile { theta } => cmd_profile(&theta.values()?),
    }
}

fn cmd_psi(xs: &[f64]) -> Result<Report> {
    let x_max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let table = GeodesicTable::build(x_max)?;
    let mut report = Report::new(&["x", "psi", "error", "scaled_error"]);
    for &x in xs {
        let g = table.psi(x)?;
        report.push(vec![f(x), f(g.psi), f(g.error), f(g.error.abs() / x.powf(0.75))]);
    }
    let errors: Vec<f64> = report.column("error").unwrap_or_default();
    add_fit(&mut report, xs, &errors)?;
    Ok(report)
}

fn cmd_zagier(deltas: &[i64], sigmas: &[f64], ts: &[f64], fe_tol: f64) -> Result<Report> {
    let mut report = Report::new(&[
        "delta",
        "sigma",
        "t",
        "value_re",
        "value_im",
        "fe_residual",
        "fe_within_tolerance",
    ]);
    for &delta in deltas {
        for &sigma in sigmas {
            for &t in ts {
                let s = Complex64::new(sigma, t);
                let v = zagier_l(delta, s)?;
                // a Gamma pole on either side (a trivial zero of the
                // series) leaves the check undefined but not the value
                let fe = match (completed_zagier(delta, s), completed_zagier(delta, 1.0 - s)) {
                    (Ok(a), Ok(b)) => Some((a - b).norm()),
                    (Err(LabError::Pole { .. }), _) | (_, Err(LabError::Pole { .. })) => None,
                    (Err(e), _) | (_, Err(e)) => return Err(e),
                };
                report.push(vec![
                    Cell::Int(delta),
                    f(sigma),
                    f(t),
                    f(v.re),
                    f(v.im),
                    fe.map_or(Cell::Missing, f),
                    fe.map_or(Cell::Missing, |r| Cell::Bool(r < fe_tol)),
                ]);
            }
        }
    }
    Ok(report)
}

fn cmd_avg(xs: &[u64], t: f64) -> Result<Report> {
    let mut report = Report::new(&[
        "X",
        "t",
        "sum_re",
        "sum_im",
        "integral_re",
        "integral_im",
        "residual",
    ]);
    for &x in xs {
        let a = average_central_values(x, t)?;
        report.push(vec![
            Cell::UInt(x),
            f(t),
            f(a.sum.re),
            f(a.sum.im),
            f(a.integral.re),
            f(a.integral.im),
            f(a.residual),
        ]);
    }
    let xf: Vec<f64> = xs.iter().map(|&x| x as f64).collect();
    let res = report.column("residual").unwrap_or_default();
    if xf.windows(2).all(|w| w[1] > w[0]) {
        add_fit(&mut report, &xf, &res)?;
    }
    Ok(report)
}

fn cmd_meanval(a_s: &[u64], bs: &[i64], cs: &[u64], twist: Option<f64>, symmetric: bool) -> Result<Report> {
    let mut report = match twist {
        None => Report::new(&["A", "B", "C", "value", "main_term", "residual", "kappa"]),
        Some(_) => Report::new(&["A", "B", "C", "x", "symmetric", "value_re", "value_im", "main_term"]),
    };
    for &a in a_s {
        for &b in bs {
            for &c in cs {
                let w = SumWindow::new(a, b, c)?;
                match twist {
                    None => {
                        let m = mean_value_f(w)?;
                        report.push(vec![
                            Cell::UInt(a),
                            Cell::Int(b),
                            Cell::UInt(c),
                            Cell::UInt(m.value),
                            f(m.main_term),
                            f(m.residual),
                            f(residual_constant(&m)),
                        ]);
                    }
                    Some(x) => {
                        let m = mean_value_fx(w, x, symmetric)?;
                        report.push(vec![
                            Cell::UInt(a),
                            Cell::Int(b),
                            Cell::UInt(c),
                            f(x),
                            Cell::Bool(symmetric),
                            f(m.value.re),
                            f(m.value.im),
                            f(m.main_term),
                        ]);
                    }
                }
            }
        }
    }
    Ok(report)
}

fn cmd_spectral(
    table: &EigenvalueTable,
    xs: &[f64],
    ts: &[f64],
    weighted: bool,
    theta: f64,
    tol: &Tolerances,
) -> Result<Report> {
    let profile = exponent_calculus(theta)?;
    let mut report = Report::new(&["X", "T", "count", "sum_re", "sum_im", "envelope", "ratio"]);
    for &x in xs {
        for &t in ts {
            let (sum, count) = if weighted {
                (weighted_spectral_sum(table, x, t)?, table.len())
            } else {
                let s = spectral_sum(table, x, t)?;
                if s.im.abs() > tol.real_part_only {
                    return Err(LabError::Numerical(format!(
                        "spectral sum at X = {x}, T = {t} has imaginary part {:e}",
                        s.im
                    )));
                }
                (s, table.count_up_to(t))
            };
            let env = spectral_envelope(&profile, x, t);
            report.push(vec![
                f(x),
                f(t),
                Cell::UInt(count as u64),
                f(sum.re),
                f(sum.im),
                f(env),
                f(sum.norm() / env),
            ]);
        }
    }
    Ok(report)
}

fn cmd_smoothed(table: &EigenvalueTable, xs: &[f64], y_exponent: f64, tol: &Tolerances) -> Result<Report> {
    if !(0.5..=1.0).contains(&y_exponent) {
        return Err(LabError::pre(format!(
            "Y = x^e needs e in [1/2, 1], got {y_exponent}"
        )));
    }
    let mut report = Report::new(&[
        "x",
        "Y",
        "cutoff",
        "terms",
        "direct",
        "spectral",
        "difference",
        "difference_over_sqrt_x",
    ]);
    for &x in xs {
        let y = x.powf(y_exponent).clamp(x.sqrt(), x);
        let kernel = Kernel::bump(y)?;
        let mass = kernel.mass();
        if (mass - 1.0).abs() > tol.kernel_mass {
            return Err(LabError::Numerical(format!("kernel mass {mass} at Y = {y}")));
        }
        let r = smoothed_error(table, x, y, &kernel)?;
        report.push(vec![
            f(x),
            f(y),
            f(r.cutoff),
            Cell::UInt(r.terms as u64),
            f(r.direct),
            f(r.spectral),
            f(r.difference),
            f(r.difference / x.sqrt()),
        ]);
    }
    Ok(report)
}

fn cmd_charsum(ds: &[i64], x: u64, theta: f64) -> Result<Report> {
    let mut report = Report::new(&[
        "D",
        "x",
        "theta",
        "sum",
        "polya_vinogradov",
        "hybrid_envelope",
        "lindelof_envelope",
        "ratio_polya_vinogradov",
        "ratio_hybrid",
        "ratio_lindelof",
    ]);
    for &d in ds {
        let r = envelope_report(d, x, theta)?;
        report.push(vec![
            Cell::Int(d),
            Cell::UInt(x),
            f(theta),
            Cell::Int(r.sum),
            f(r.polya_vinogradov),
            f(r.hybrid_envelope),
            f(r.lindelof_envelope),
            f(r.ratio_polya_vinogradov),
            f(r.ratio_hybrid),
            f(r.ratio_lindelof),
        ]);
    }
    Ok(report)
}

fn cmd_profile(thetas: &[f64]) -> Result<Report> {
    let mut report = Report::new(&[
        "theta",
        "alpha",
        "beta",
        "sigma_opt",
        "delta_exp",
        "e_exponent",
        "lower_branch",
        "upper_branch",
        "theta_constraint",
    ]);
    for &theta in thetas {
        let p = exponent_calculus(theta)?;
        let (lo, hi) = p.branches();
        report.push(vec![
            f(theta),
            f(p.alpha),
            f(p.beta),
            f(p.sigma_opt),
            f(p.delta_exp),
            f(p.e_exponent()),
            f(lo),
            f(hi),
            Cell::Bool(theta_constraint_check(&p)),
        ]);
    }
    Ok(report)
}

#[derive(Debug, Parser)]
#[command(name = "geolab", version, about = "Prime geodesic experiments on the modular surface")]
struct Cli {
    /// JSON run configuration; flags below override its fields
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// output file (default: stdout)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// eigenvalue table (default: the bundled one)
    #[arg(long, global = true)]
    eigenvalues: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

fn resolve(cli: Cli) -> Result<RunConfig> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| LabError::Parse {
                path: path.clone(),
                line: 0,
                message: e.to_string(),
            })?;
            let mut config: RunConfig = serde_json::from_str(&text).map_err(|e| LabError::Parse {
                path: path.clone(),
                line: e.line(),
                message: e.to_string(),
            })?;
            if let Some(cmd) = cli.command {
                config.command = cmd;
            }
            config
        }
        None => match cli.command {
            Some(cmd) => RunConfig::new(cmd),
            None => return Err(LabError::pre("a subcommand or --config is required")),
        },
    };
    if cli.out.is_some() {
        config.output_path = cli.out;
    }
    if let Some(fmt) = cli.format {
        config.output_format = fmt;
    }
    if cli.threads.is_some() {
        config.thread_count = cli.threads;
    }
    if cli.eigenvalues.is_some() {
        config.eigenvalues = cli.eigenvalues;
    }
    Ok(config)
}

fn emit(config: &RunConfig, text: &str) -> std::io::Result<()> {
    match &config.output_path {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 2 on usage or precondition errors, 1 on internal failures.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let config = match resolve(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("geolab: {e}");
            return 2;
        }
    };
    let result = run(&config);
    let code = match &result {
        Ok(_) => 0,
        Err(e) if e.is_precondition() => 2,
        Err(_) => 1,
    };
    let text = match (&result, config.output_format) {
        (Ok(r), Format::Csv) => Some(r.to_csv()),
        (Ok(r), Format::Json) => Some(r.to_json(&config)),
        (Err(e), Format::Json) => Some(json_document(&config, None, Some(e))),
        (Err(_), Format::Csv) => None,
    };
    if let Err(e) = &result {
        eprintln!("geolab: {e}");
    }
    if let Some(text) = text {
        if let Err(e) = emit(&config, &text) {
            eprintln!("geolab: cannot write output: {e}");
            return 1;
        }
    }
    code
}
