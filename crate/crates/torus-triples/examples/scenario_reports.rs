//! Run every bundled scenario through the verifier and print the condition
//! table; equivalent to invoking the `verify` binary on each file.
//!
//! ```bash
//! cargo run -p torus-triples --example scenario_reports
//! ```

use std::path::PathBuf;

use torus_triples::verifier::{run_scenario, Scenario};

fn main() -> torus_triples::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    for file in files {
        let mut scenario = Scenario::from_path(&file)?;
        scenario.grid = 16; // keep the demo quick; reports pin the full grid
        let report = run_scenario(&scenario)?;
        println!(
            "== {} (p = {}, |G| = {}, {}) ==",
            report.scenario,
            report.dimension,
            report.group_order,
            if report.action_free { "free" } else { "non-free" }
        );
        println!(
            "  singular locus: {} component(s) {:?}",
            report.singular_locus.component_count, report.singular_locus.component_dimensions
        );
        for c in &report.conditions {
            println!("  {:<14} {:<12} witness {:.3e}", c.name, c.verdict, c.witness);
        }
        println!("  orientability: {} ({})\n", report.orientability.verdict, report.orientability.note);
    }
    Ok(())
}
