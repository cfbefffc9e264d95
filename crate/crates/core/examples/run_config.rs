//! Runs an experiment from a JSON configuration, as `geolab --config` does,
//! and prints the CSV report.
//!
//! cargo run --release --example run_config -- '{"command": "charsum", "d": [5, -4], "x": 1000}'

use geodesic_lab::cli::{run, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let json = std::env::args().nth(1).unwrap_or_else(|| {
        r#"{"command": "profile", "theta": {"start": 0, "stop": 0.16, "step": 0.04}}"#.to_string()
    });
    let config: RunConfig = serde_json::from_str(&json)?;
    let report = run(&config)?;
    print!("{}", report.to_csv());
    Ok(())
}
