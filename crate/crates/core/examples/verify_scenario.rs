//! Loads a scenario file and prints its markdown report.
//!
//! `cargo run --example verify_scenario -- scenarios/sigma_t_s2.toml`

use std::path::PathBuf;

use paranull::verifier::{run, RunOptions, ScenarioConfig};

fn main() {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/sigma_t_s2.toml")
        });
    let result = ScenarioConfig::load(&path).and_then(|cfg| run(&cfg, &RunOptions::default()));
    match result {
        Ok(report) => {
            print!("{}", report.to_markdown());
            std::process::exit(if report.passed() { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.exit_code());
        }
    }
}
