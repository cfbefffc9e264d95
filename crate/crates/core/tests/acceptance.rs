//! The ten acceptance criteria, each at its stated tolerance and runtime.
//! Runs as a plain binary so that every line is printed, then exits with a
//! failure status if any criterion failed.

use std::time::{Duration, Instant};

use geodesic_lab::analysis::{exponent_calculus, fit_exponent};
use geodesic_lab::arith::{gcd, is_fundamental, is_squarefree, kronecker, mobius};
use geodesic_lab::cli::{run, Report, RunConfig};
use geodesic_lab::counting::{
    lambda_q, rho_ca, rho_k_product, rho_q, verify_kloosterman_identity,
};
use geodesic_lab::lseries::{average_central_values, completed_zagier, dirichlet_l, zagier_l};
use geodesic_lab::quadforms::{conjugacy_oracle, psi_gamma, GeodesicTable};
use geodesic_lab::spectral::{spectral_sum, EigenvalueTable};
use geodesic_lab::sums::{mean_value_f, SumWindow};
use num_complex::Complex64;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn criterion(n: u32, name: &str, limit: Option<Duration>, check: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let pass = result.pass && in_time;
    let budget = match limit {
        Some(l) => format!(", limit {} s{}", l.as_secs(), if in_time { "" } else { ", over time" }),
        None => String::new(),
    };
    println!(
        "criterion {n:>2} {name:<28} {}  {} [{:.2} s{budget}]",
        if pass { "PASS" } else { "FAIL" },
        result.detail,
        elapsed.as_secs_f64(),
    );
    pass
}

fn exact_identities() -> Outcome {
    let mut failures = Vec::new();
    for c1 in 1u64..=150 {
        for c2 in 1..=150 / c1 {
            if gcd(c1, c2) != 1 {
                continue;
            }
            for a in -500i64..=500 {
                if rho_ca(c1 * c2, a) != rho_ca(c1, a) * rho_ca(c2, a) {
                    failures.push(format!("rho_ca({}, {a})", c1 * c2));
                }
            }
        }
    }
    for q in 1u64..=200 {
        for delta in -500i64..=500 {
            let rhs: i64 = (1..=q)
                .filter(|q1| q % q1 == 0)
                .map(|q1| mobius(q / q1).pow(2) * lambda_q(q1, delta))
                .sum();
            if rho_q(q, delta) as i64 != rhs {
                failures.push(format!("inversion q={q} delta={delta}"));
            }
        }
    }
    for k in (1u64..=300).step_by(2).filter(|&k| is_squarefree(k)) {
        for a in -100i64..=100 {
            let p = rho_k_product(k, a).expect("odd squarefree k");
            let divisor_sum: i64 = (1..=k as i64)
                .filter(|r| k as i64 % r == 0)
                .map(|r| kronecker(a * a - 4, r) as i64)
                .sum();
            if p != rho_ca(k, a) || p as i64 != divisor_sum {
                failures.push(format!("rho_k_product({k}, {a})"));
            }
        }
    }
    let mut worst = 0.0f64;
    for c in 1u64..=150 {
        for n in -50i64..=50 {
            worst = worst.max(verify_kloosterman_identity(n, c));
        }
    }
    if worst >= 1e-9 {
        failures.push(format!("Kloosterman residual {worst:.2e}"));
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} mismatches; max Kloosterman residual {worst:.2e}",
            failures.len()
        ),
    )
}

fn zagier_consistency() -> Outcome {
    let zeta3 = 1.202_056_903_159_594_3;
    let z0 = zagier_l(0, Complex64::new(2.0, 0.0)).expect("zeta(3)");
    let err0 = (z0 - zeta3).norm();

    let fundamentals: Vec<i64> = (-200i64..=200)
        .filter(|&d| d != 1 && is_fundamental(d))
        .take(20)
        .collect();
    let points = [
        Complex64::new(0.5, 0.0),
        Complex64::new(0.5, 3.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(0.8, -1.5),
    ];
    let mut err_d = 0.0f64;
    for &d in &fundamentals {
        for &s in &points {
            let a = zagier_l(d, s).expect("zagier_l");
            let b = dirichlet_l(d, s).expect("dirichlet_l");
            err_d = err_d.max((a - b).norm() / b.norm().max(1.0));
        }
    }

    // partial sums of sum lambda_q(delta) q^-s against twice the next block
    // of absolute terms
    let mut worst_ratio = 0.0f64;
    for delta in [8i64, 12, 20, 45, 32] {
        for t in [0.0, 1.0, 5.0] {
            let s = Complex64::new(2.0, t);
            let q_max = 1000u64;
            let partial: Complex64 = (1..=q_max)
                .map(|q| lambda_q(q, delta) as f64 * Complex64::new(q as f64, 0.0).powc(-s))
                .sum();
            let tail: f64 = (q_max + 1..=64 * q_max)
                .map(|q| (lambda_q(q, delta) as f64).abs() * (q as f64).powi(-2))
                .sum();
            let v = zagier_l(delta, s).expect("zagier_l");
            worst_ratio = worst_ratio.max((v - partial).norm() / (2.0 * tail));
        }
    }
    outcome(
        err0 < 1e-9 && fundamentals.len() == 20 && err_d < 1e-9 && worst_ratio <= 1.0,
        format!(
            "|L(2,0) - zeta(3)| = {err0:.1e}; max Zagier/Dirichlet gap {err_d:.1e} over {} D; \
             partial-sum error / tail bound <= {worst_ratio:.3}",
            fundamentals.len()
        ),
    )
}

fn functional_equation() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for delta in [5i64, 8, 12, 13, -3, -4, 21] {
        for re in [0.5, 0.6, 0.75] {
            for im in [0.0, 1.0, 2.0] {
                let s = Complex64::new(re, im);
                let a = completed_zagier(delta, s).expect("Lambda(s)");
                let b = completed_zagier(delta, 1.0 - s).expect("Lambda(1-s)");
                worst = worst.max((a - b).norm());
                count += 1;
            }
        }
    }
    outcome(
        worst < 1e-6,
        format!("max |Lambda(s) - Lambda(1-s)| = {worst:.2e} over {count} points"),
    )
}

fn geodesic_oracle() -> Outcome {
    let mut worst = 0.0f64;
    for x in [7.0, 10.0, 20.0, 50.0, 100.0, 200.0] {
        let a = psi_gamma(x).expect("psi").psi;
        let b = conjugacy_oracle(x).expect("oracle");
        worst = worst.max((a - b).abs());
    }
    let eps = (3.0 + 5f64.sqrt()) / 2.0;
    let jump = eps * eps;
    let before = psi_gamma(jump - 1e-9).expect("psi").psi;
    let at = psi_gamma(jump + 1e-9).expect("psi").psi;
    let expect = 2.0 * eps.ln();
    let jump_ok = before == 0.0 && (at - expect).abs() < 1e-9 && (jump - 6.8541).abs() < 1e-4;
    outcome(
        worst < 1e-9 && jump_ok,
        format!(
            "max |psi - oracle| = {worst:.1e}; first jump at {jump:.6} of size {at:.6} (2 log eps = {expect:.6})"
        ),
    )
}

fn geodesic_asymptotics() -> Outcome {
    let table = GeodesicTable::build(1e8).expect("table");
    let xs: Vec<f64> = (0..=12).map(|k| 1e4 * 10f64.powf(k as f64 / 3.0)).collect();
    let rows: Vec<(f64, f64)> = xs
        .iter()
        .map(|&x| (x, table.psi(x.min(1e8)).expect("psi").error))
        .collect();
    let fit = fit_exponent(&rows).expect("fit");
    let ratio = table.psi(1e8).expect("psi").psi / 1e8;
    outcome(
        (0.3..=0.75).contains(&fit.slope) && (0.98..=1.02).contains(&ratio),
        format!(
            "fitted exponent of |E(x)| on {} points = {:.4}; Psi(1e8)/1e8 = {ratio:.6}",
            rows.len(),
            fit.slope
        ),
    )
}

fn central_value_average() -> Outcome {
    let rows: Vec<(f64, f64)> = [250u64, 500, 1000, 2000]
        .iter()
        .map(|&x| (x as f64, average_central_values(x, 0.0).expect("average").residual))
        .collect();
    let fit = fit_exponent(&rows).expect("fit");
    let shown: Vec<String> = rows.iter().map(|r| format!("{:.3}", r.1)).collect();
    outcome(
        fit.slope <= 0.9,
        format!(
            "residuals [{}]; fitted exponent {:.3}",
            shown.join(", "),
            fit.slope
        ),
    )
}

fn mean_value() -> Outcome {
    let rows: Vec<(f64, f64)> = [20u64, 40, 80, 160]
        .iter()
        .map(|&c| {
            let m = mean_value_f(SumWindow { a: 50, b: 10_000, c }).expect("F");
            (c as f64, m.residual)
        })
        .collect();
    let fit = fit_exponent(&rows).expect("fit");
    let big = mean_value_f(SumWindow { a: 1_000, b: 10_000, c: 1_000 }).expect("F");
    let ratio = big.value as f64 / big.main_term;
    outcome(
        fit.slope <= 2.2 && (ratio - 1.0).abs() <= 0.1,
        format!(
            "residual slope {:.3}; value/main at A = C = 1000: {ratio:.5}",
            fit.slope
        ),
    )
}

fn exponent_calculus_suite() -> Outcome {
    let top = exponent_calculus(1.0 / 6.0).expect("theta = 1/6");
    let bottom = exponent_calculus(0.0).expect("theta = 0");
    let exact = top.delta_exp == 2.0 / 3.0 && bottom.delta_exp == 5.0 / 8.0;
    let sigma_err = (top.sigma_opt - 16.0 / 17.0)
        .abs()
        .max((bottom.sigma_opt - 10.0 / 11.0).abs());
    let mut balance = 0.0f64;
    for k in 0..100 {
        let p = exponent_calculus(k as f64 / 99.0 / 6.0).expect("profile");
        let (lo, hi) = p.branches();
        balance = balance.max((lo - hi).abs()).max((lo.max(hi) - p.delta_exp).abs());
    }
    outcome(
        exact && sigma_err < 1e-12 && balance < 1e-10,
        format!(
            "delta(1/6) = {}, delta(0) = {}; sigma endpoint error {sigma_err:.1e}; \
             branch balance {balance:.1e} on 100 points",
            top.delta_exp, bottom.delta_exp
        ),
    )
}

fn spectral_suite() -> Outcome {
    let table = EigenvalueTable::bundled();
    let top = table.complete_to();
    let mut max_im = 0.0f64;
    for k in 0..50 {
        let x = 1.0 + 37.3 * k as f64;
        for j in 0..=10 {
            let t = top * j as f64 / 10.0;
            max_im = max_im.max(spectral_sum(table, x, t).expect("sum").im.abs());
        }
    }
    let mut x1_ok = true;
    for j in 0..=20 {
        let t = top * j as f64 / 20.0;
        let s = spectral_sum(table, 1.0, t).expect("sum");
        x1_ok &= s.re == 2.0 * table.count_up_to(t) as f64 && s.im == 0.0;
    }
    let ratio = table.weyl_ratio();
    outcome(
        max_im < 1e-12 && x1_ok && (0.8..=1.2).contains(&ratio),
        format!(
            "max |Im| = {max_im:.1e}; X = 1 gives 2 count: {x1_ok}; Weyl ratio at T = {top} is {ratio:.4} ({} values)",
            table.count_up_to(top)
        ),
    )
}

const COMMANDS: &[&str] = &[
    r#"{"command": "psi", "x": {"start": 1e3, "stop": 1e6, "step": 2, "log": true}}"#,
    r#"{"command": "zagier", "delta": [5, 8, -3, 20], "sigma": [0.5, 0.75, 2], "t": [0, 1.5]}"#,
    r#"{"command": "avg", "x": [100, 200, 400], "t": 0.3}"#,
    r#"{"command": "meanval", "a": [20, 40], "b": [1000, -700], "c": [10, 30]}"#,
    r#"{"command": "meanval", "a": [15], "b": [300], "c": [25], "twist": 0.0173, "symmetric": true}"#,
    r#"{"command": "spectral", "x": [2, 10, 1e4], "t": [20, 60, 150]}"#,
    r#"{"command": "spectral", "x": [2, 10, 1e4], "t": [1, 5, 10], "weighted": true}"#,
    r#"{"command": "smoothed", "x": [1e4, 3e4], "y_exponent": 0.8}"#,
    r#"{"command": "charsum", "d": [5, -4, 8, 2005], "x": 100000}"#,
    r#"{"command": "profile", "theta": {"start": 0, "stop": 0.16, "step": 0.02}}"#,
];

fn report_for(json: &str, threads: usize) -> (RunConfig, Report) {
    let mut config: RunConfig = serde_json::from_str(json).expect("config parses");
    config.thread_count = Some(threads);
    let report = run(&config).unwrap_or_else(|e| panic!("{json}: {e}"));
    (config, report)
}

fn determinism() -> Outcome {
    let mut identical = true;
    let mut worst = 0.0f64;
    let mut failed = Vec::new();
    for (i, json) in COMMANDS.iter().enumerate() {
        let (c1, r1) = report_for(json, 1);
        let (_, r1b) = report_for(json, 1);
        let (c8, r8) = report_for(json, 8);
        let (_, r8b) = report_for(json, 8);
        let same = r1.to_csv() == r1b.to_csv()
            && r8.to_csv() == r8b.to_csv()
            && r1.to_json(&c1) == r1b.to_json(&c1)
            && r8.to_json(&c8) == r8b.to_json(&c8);
        let mut gap = 0.0f64;
        for (row1, row8) in r1.rows.iter().zip(&r8.rows) {
            for (a, b) in row1.iter().zip(row8) {
                let (a, b) = (a.as_f64(), b.as_f64());
                gap = gap.max((a - b).abs() / a.abs().max(1.0));
            }
        }
        if !same || gap > 1e-12 || r1.rows.len() != r8.rows.len() {
            failed.push(i);
        }
        identical &= same;
        worst = worst.max(gap);
    }
    outcome(
        failed.is_empty(),
        format!(
            "{} configs; repeated runs byte-identical: {identical}; max 1 vs 8 thread gap {worst:.1e}",
            COMMANDS.len()
        ),
    )
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let results = [
        criterion(1, "exact identities", secs(120), exact_identities),
        criterion(2, "Zagier consistency", secs(60), zagier_consistency),
        criterion(3, "functional equation", secs(60), functional_equation),
        criterion(4, "geodesic oracle", secs(300), geodesic_oracle),
        criterion(5, "prime geodesic asymptotics", secs(1800), geodesic_asymptotics),
        criterion(6, "central value average", secs(1200), central_value_average),
        criterion(7, "mean value F", secs(600), mean_value),
        criterion(8, "exponent calculus", secs(1), exponent_calculus_suite),
        criterion(9, "spectral suite", secs(1), spectral_suite),
        criterion(10, "determinism", None, determinism),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
