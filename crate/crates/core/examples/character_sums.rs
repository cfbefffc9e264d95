//! Partial sums of quadratic characters against the Polya-Vinogradov,
//! hybrid and square-root envelopes.
//!
//! cargo run --release --example character_sums -- 987654

use geodesic_lab::sums::envelope_report;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(987_654);
    let theta = 1.0 / 6.0;
    println!("x = {x}, theta = 1/6");
    println!("{:>8} {:>10} {:>10} {:>10} {:>10}", "D", "sum", "/PV", "/hybrid", "/sqrt x");
    for d in [5i64, -3, -4, 8, 13, -23, 2005, -1999, 100_001] {
        let r = envelope_report(d, x, theta)?;
        println!(
            "{d:>8} {:>10} {:>10.4} {:>10.4} {:>10.4}",
            r.sum, r.ratio_polya_vinogradov, r.ratio_hybrid, r.ratio_lindelof
        );
    }
    Ok(())
}
