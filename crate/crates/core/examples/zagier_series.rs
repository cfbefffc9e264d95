//! Zagier L-series L(s, delta) on the critical line, with the symmetry of
//! the completed series Lambda(s, delta) = Lambda(1 - s, delta).
//!
//! cargo run --release --example zagier_series -- 20

use geodesic_lab::lseries::{completed_zagier, zagier_evaluation};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let delta: i64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(20);
    println!("{:>6} {:>24} {:>22} {:>10}", "t", "L(1/2 + it, delta)", "T_ell(s)", "FE resid");
    for k in 0..=10 {
        let s = Complex64::new(0.5, k as f64);
        let ev = zagier_evaluation(delta, s)?;
        let fe = (completed_zagier(delta, s)? - completed_zagier(delta, 1.0 - s)?).norm();
        println!(
            "{:>6.1} {:>11.7} {:>+11.7}i {:>10.5} {:>+10.5}i {:>10.1e}",
            s.im, ev.value.re, ev.value.im, ev.correction_factor.re, ev.correction_factor.im, fe
        );
    }
    Ok(())
}
