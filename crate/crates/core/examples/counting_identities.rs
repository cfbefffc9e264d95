//! The counting functions rho_q, lambda_q and rho(c, a), and the expansion
//! of the Kloosterman sum S(n, n; c) in terms of rho(c, a).
//!
//! cargo run --release --example counting_identities -- 13

use geodesic_lab::arith::decompose_discriminant;
use geodesic_lab::counting::{kloosterman, lambda_q, rho_ca, rho_q, verify_kloosterman_identity};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let delta: i64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(13);
    let disc = decompose_discriminant(delta)?;
    println!("delta = {delta} = {} * {}^2", disc.d_fund, disc.ell);
    println!("{:>4} {:>8} {:>10}", "q", "rho_q", "lambda_q");
    for q in 1..=12 {
        println!("{q:>4} {:>8} {:>10}", rho_q(q, delta), lambda_q(q, delta));
    }

    let c = 35;
    let row: Vec<String> = (0..c as i64).map(|a| rho_ca(c, a).to_string()).collect();
    println!("\nrho({c}, a) for a = 0..{}: {}", c - 1, row.join(" "));

    let mut worst = 0.0f64;
    for c in 1..=60 {
        for n in -10..=10 {
            worst = worst.max(verify_kloosterman_identity(n, c));
        }
    }
    println!("S(1, 1; {c}) = {:.12}", kloosterman(1, c).re);
    println!("largest Kloosterman identity residual, c <= 60, |n| <= 10: {worst:.2e}");
    Ok(())
}
