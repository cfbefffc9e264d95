//! Reduced indefinite forms, their cycles and the Pell unit for a few
//! discriminants, and the weights with which each trace enters Psi.
//!
//! cargo run --example quadratic_forms -- 5 12 21 60 229

use geodesic_lab::quadforms::{reduce_forms, trace_norm, trace_weight};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut deltas: Vec<i64> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    if deltas.is_empty() {
        deltas = vec![5, 12, 21, 60, 229];
    }
    for delta in deltas {
        let set = reduce_forms(delta)?;
        println!(
            "delta = {delta}: {} reduced forms, {} cycles, unit ({} + {} sqrt {delta})/2, regulator {:.6}",
            set.reduced_forms.len(),
            set.class_number,
            set.pell_t,
            set.pell_u,
            set.regulator
        );
    }
    println!("\n{:>4} {:>14} {:>12}", "t", "norm", "weight");
    for t in 3..=12 {
        println!("{t:>4} {:>14.4} {:>12.6}", trace_norm(t), trace_weight(t));
    }
    Ok(())
}
