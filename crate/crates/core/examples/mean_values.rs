//! The mean value F(A, B, C) of rho(c, a) with its main term 6AC/pi^2, and
//! the twisted sum F_x against 6C sin(2 pi A x)/(pi^3 x).
//!
//! cargo run --release --example mean_values

use geodesic_lab::analysis::fit_exponent;
use geodesic_lab::sums::{mean_value_f, mean_value_fx, residual_constant, SumWindow};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>5} {:>10} {:>14} {:>10} {:>8}", "C", "F", "main", "residual", "kappa");
    let mut rows = Vec::new();
    for c in [20, 40, 80, 160, 320] {
        let m = mean_value_f(SumWindow::new(50, 10_000, c)?)?;
        println!(
            "{c:>5} {:>10} {:>14.3} {:>10.3} {:>8.4}",
            m.value,
            m.main_term,
            m.residual,
            residual_constant(&m)
        );
        rows.push((c as f64, m.residual));
    }
    println!("residual slope in C: {:.3}", fit_exponent(&rows)?.slope);

    let w = SumWindow::new(40, 5_000, 60)?;
    println!("\n{:>8} {:>24} {:>12}", "x", "F_x", "main");
    for x in [0.0, 0.001, 0.005, 0.01, 0.02, 0.05] {
        let v = mean_value_fx(w, x, true)?;
        println!("{x:>8.3} {:>11.3} {:>+11.3}i {:>12.3}", v.value.re, v.value.im, v.main_term);
    }
    Ok(())
}
