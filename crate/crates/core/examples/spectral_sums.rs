//! Exponential sums over the spectral parameters of Maass cusp forms,
//! truncated and exponentially damped, against the envelope
//! T X^E + T X^(2 delta - 1 - E) + T^(3/2) (log T)^2.
//!
//! cargo run --release --example spectral_sums -- [eigenvalue file]

use geodesic_lab::analysis::exponent_calculus;
use geodesic_lab::spectral::{
    load_eigenvalues, spectral_envelope, spectral_sum, weighted_spectral_sum, weyl_count,
    EigenvalueTable,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = match std::env::args().nth(1) {
        Some(path) => load_eigenvalues(path)?,
        None => EigenvalueTable::bundled().clone(),
    };
    let top = table.complete_to();
    println!("{} values, complete to T = {top} ({})", table.len(), table.source());
    for t in [25.0, 50.0, 100.0, top] {
        if t <= top {
            println!("N({t}) = {}, Weyl {:.1}", table.count_up_to(t), weyl_count(t));
        }
    }

    let profile = exponent_calculus(1.0 / 6.0)?;
    let t = top.min(100.0);
    println!("\n{:>10} {:>12} {:>12}", "X", "sum", "/envelope");
    for x in [2.0, 10.0, 1e2, 1e3, 1e4, 1e6] {
        let s = spectral_sum(&table, x, t)?;
        println!("{x:>10.0} {:>12.4} {:>12.5}", s.re, s.re.abs() / spectral_envelope(&profile, x, t));
    }

    let damp = top / 20.0;
    println!("\ndamped by e^(-t_j/{damp}):");
    for x in [2.0, 10.0, 1e3] {
        let s = weighted_spectral_sum(&table, x, damp)?;
        println!("{x:>10.0} {:>12.6} {:>+12.6}i", s.re, s.im);
    }
    Ok(())
}
