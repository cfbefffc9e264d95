//! Psi(x) and the error term E(x) = Psi(x) - x on a logarithmic grid.
//!
//! cargo run --release --example prime_geodesics -- 1e7

use geodesic_lab::analysis::fit_exponent;
use geodesic_lab::quadforms::GeodesicTable;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x_max: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(1e6);
    let table = GeodesicTable::build(x_max)?;
    let points = 13;
    let x_min = 1e3f64.min(x_max / 10.0);
    let mut rows = Vec::new();
    println!("{:>14} {:>18} {:>14} {:>10}", "x", "psi", "E(x)", "E/x^0.75");
    for k in 0..points {
        let x = x_min * (x_max / x_min).powf(k as f64 / (points - 1) as f64);
        let g = table.psi(x)?;
        println!(
            "{:>14.1} {:>18.4} {:>14.4} {:>10.4}",
            x,
            g.psi,
            g.error,
            g.error.abs() / x.powf(0.75)
        );
        rows.push((x, g.error.abs()));
    }
    let fit = fit_exponent(&rows)?;
    println!("fitted exponent of |E(x)|: {:.3}", fit.slope);
    Ok(())
}
