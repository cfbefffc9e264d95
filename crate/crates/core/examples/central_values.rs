//! Average of L(1/2 + it, n^2 - 4) over 3 <= n <= X against the integral
//! of the density m_t.
//!
//! cargo run --release --example central_values -- 0.0 250 500 1000

use geodesic_lab::analysis::fit_exponent;
use geodesic_lab::lseries::average_central_values;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let t: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0.0);
    let mut grid: Vec<u64> = args.map(|s| s.parse()).collect::<Result<_, _>>()?;
    if grid.is_empty() {
        grid = vec![100, 200, 400, 800];
    }
    println!("t = {t}");
    println!("{:>6} {:>28} {:>28} {:>12}", "X", "sum", "integral", "residual");
    let mut rows = Vec::new();
    for &x in &grid {
        let avg = average_central_values(x, t)?;
        println!(
            "{:>6} {:>13.6} {:>+13.6}i {:>13.6} {:>+13.6}i {:>12.6}",
            x, avg.sum.re, avg.sum.im, avg.integral.re, avg.integral.im, avg.residual
        );
        rows.push((x as f64, avg.residual));
    }
    if rows.len() >= 3 {
        println!("fitted exponent of the residual: {:.3}", fit_exponent(&rows)?.slope);
    }
    Ok(())
}
