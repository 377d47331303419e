//! Scenario runner: `verify <scenario-file> [--grid N] [--out DIR]
//! [--format json|csv|both] [--conditions LIST] [--spectral-cutoff L]`.
//!
//! Exit code 0 on any completed run regardless of verdicts; nonzero only on
//! errors (bad scenario, I/O, numerical failure).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use torus_triples::verifier::{emit_report, run_scenario, Condition, ReportFormat, Scenario};

#[derive(Parser)]
#[command(
    name = "verify",
    about = "Run a flat-torus invariant-triple scenario and emit its report"
)]
struct Args {
    /// Scenario file (TOML).
    scenario: PathBuf,
    /// Override the grid resolution per axis.
    #[arg(long)]
    grid: Option<usize>,
    /// Output directory for reports.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Report format.
    #[arg(long, default_value = "json")]
    format: String,
    /// Comma-separated condition list (dimension,first-order,orientability,closedness,connectivity).
    #[arg(long)]
    conditions: Option<String>,
    /// Override the spectral counting cutoff.
    #[arg(long = "spectral-cutoff")]
    spectral_cutoff: Option<f64>,
}

fn run(args: &Args) -> torus_triples::Result<()> {
    let mut scenario = Scenario::from_path(&args.scenario)?;
    if let Some(grid) = args.grid {
        if grid < 8 {
            return Err(torus_triples::Error::ScenarioValidation(format!(
                "grid {grid} below the minimum of 8"
            )));
        }
        scenario.grid = grid;
    }
    if let Some(list) = &args.conditions {
        scenario.conditions = list
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(Condition::parse)
            .collect::<torus_triples::Result<Vec<_>>>()?;
    }
    if let Some(lam) = args.spectral_cutoff {
        scenario.spectral_cutoff = lam;
    }
    let format = ReportFormat::parse(&args.format)?;

    let report = run_scenario(&scenario)?;
    let files = emit_report(&report, &args.out, format)?;

    println!(
        "scenario {}: group order {}, action {}",
        report.scenario,
        report.group_order,
        if report.action_free { "free" } else { "non-free" }
    );
    for c in &report.conditions {
        println!("  {:<14} {:<12} witness {:.3e}", c.name, c.verdict, c.witness);
    }
    println!("  orientability verdict: {}", report.orientability.verdict);
    for f in files {
        println!("  wrote {}", f.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
