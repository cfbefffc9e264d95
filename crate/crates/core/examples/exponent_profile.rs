//! How a subconvexity exponent theta for quadratic Dirichlet L-functions
//! feeds through to the exponent 5/8 + theta/4 of the prime geodesic
//! error term.
//!
//! cargo run --example exponent_profile

use geodesic_lab::analysis::{exponent_calculus, theta_constraint_check};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:>8} {:>8} {:>8} {:>10} {:>8} {:>8} {:>6}",
        "theta", "alpha", "beta", "sigma", "E", "delta", "ok"
    );
    for k in 0..=8 {
        let p = exponent_calculus(k as f64 / 48.0)?;
        println!(
            "{:>8.5} {:>8.5} {:>8.5} {:>10.7} {:>8.5} {:>8.5} {:>6}",
            p.theta,
            p.alpha,
            p.beta,
            p.sigma_opt,
            p.e_exponent(),
            p.delta_exp,
            theta_constraint_check(&p)
        );
    }
    Ok(())
}
