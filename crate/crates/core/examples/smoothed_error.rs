//! The kernel-smoothed error E(x; k) = int (Psi(x + u) - x - u) k(u) du,
//! computed from Psi and from the truncated spectral expansion.
//!
//! cargo run --release --example smoothed_error -- 0.75

use geodesic_lab::spectral::{smoothed_error, EigenvalueTable, Kernel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e: f64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(0.75);
    let table = EigenvalueTable::bundled();
    println!(
        "{:>10} {:>10} {:>8} {:>6} {:>12} {:>12} {:>12}",
        "x", "Y", "cutoff", "terms", "direct", "spectral", "diff/sqrt x"
    );
    for x in [1e4, 3e4, 1e5, 3e5, 1e6] {
        let y = f64::powf(x, e);
        let r = match smoothed_error(table, x, y, &Kernel::bump(y)?) {
            Ok(r) => r,
            Err(err) => {
                println!("{x:>10.0} {y:>10.0}  skipped: {err}");
                continue;
            }
        };
        println!(
            "{x:>10.0} {y:>10.0} {:>8.1} {:>6} {:>12.3} {:>12.3} {:>12.4}",
            r.cutoff,
            r.terms,
            r.direct,
            r.spectral,
            r.difference / x.sqrt()
        );
    }
    Ok(())
}
