//! Command-line front end: `ohmw-sim <scenario> --config <file>`.
//!
//! Exit status: 0 on success, 1 when a `check` row is out of tolerance,
//! 2 on any error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use ohmw::io::{run, Format, Outputs, RunConfig, Scenario};

#[derive(Parser)]
#[command(name = "ohmw-sim", version, about = "Run one simulation scenario from a TOML config")]
struct Cli {
    /// check, balazs, phase_a, phase_b, sweep or sensitivity
    scenario: Scenario,
    /// TOML config, or a JSON result file to rerun from its echoed inputs
    #[arg(long)]
    config: PathBuf,
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<Format>,
    /// Overrides the Monte Carlo seed
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("ohmw-sim: {}", e.to_string().replace('\n', " "));
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> ohmw::Result<bool> {
    let cfg = RunConfig::load(&cli.config)?;
    let out = run(cli.scenario, &cfg, cli.seed)?;

    let configured = cfg.output.clone().unwrap_or_default();
    let path = cli.out.clone().or(configured.path);
    let by_extension = path
        .as_ref()
        .and_then(|p| p.extension())
        .and_then(|e| e.to_str())
        .and_then(|e| e.parse::<Format>().ok());
    let format = cli.format.or(by_extension).or(configured.format).unwrap_or_default();
    for p in out.emit(format, path.as_deref())? {
        log::info!("wrote {}", p.display());
    }

    if let Outputs::Check(table) = &out.outputs {
        for r in &table.rows {
            eprintln!(
                "{} {:<26} {:>14.6e} ref {:>10.3e} {}",
                if r.pass { "PASS" } else { "FAIL" },
                r.name,
                r.computed,
                r.reference,
                r.tolerance.describe()
            );
        }
    }
    Ok(out.passed())
}
