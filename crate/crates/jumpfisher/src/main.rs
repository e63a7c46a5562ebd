//! Command-line front end.
//!
//! Exit codes:
//! * `0` — run finished and every gating check held (or validate/audit passed)
//! * `1` — run finished but a gating check failed (or the re-audit failed)
//! * `2` — configuration-phase error: unreadable/invalid config file or a
//!   malformed run directory handed to `audit`
//! * `3` — run-phase error: the simulation itself reported a failure

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use jumpfisher::config::{load_config, OverrideEcho};
use jumpfisher::pipeline::{audit_dir, run_experiment};

/// Quantum-jump unravelings of Markovian open-system dynamics: conditional
/// Fisher information, trajectory thermodynamic geometry, and observable
/// speed limits, with a built-in self-audit.
#[derive(Parser)]
#[command(name = "jumpfisher", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the configured experiment and write tables, audit, and config echo.
    Run {
        /// Path to the TOML configuration file.
        config: PathBuf,
        /// Override `ensemble.master_seed`.
        #[arg(long)]
        seed: Option<u64>,
        /// Override `ensemble.n_trajs`.
        #[arg(long = "n-trajs")]
        n_trajs: Option<u64>,
        /// Override `output.directory`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse, default, and validate a configuration; print the effective TOML.
    Validate {
        /// Path to the TOML configuration file.
        config: PathBuf,
    },
    /// Re-derive the audit verdicts from a finished run directory.
    Audit {
        /// Directory previously written by `run`.
        run_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Run { config, seed, n_trajs, out } => {
            let overrides =
                OverrideEcho { master_seed: seed, n_trajs, directory: out };
            let mut cfg = match load_config(&config) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("configuration error: {e}");
                    return ExitCode::from(2);
                }
            };
            if let Err(e) = cfg.apply_overrides(&overrides) {
                eprintln!("configuration error: {e}");
                return ExitCode::from(2);
            }
            match run_experiment(&cfg, &overrides) {
                Ok(report) => {
                    println!(
                        "experiment {} → {}",
                        report.experiment,
                        cfg.output.directory.display()
                    );
                    for line in report.summary_lines() {
                        println!("{line}");
                    }
                    if report.overall_pass {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("run error: {e}");
                    ExitCode::from(3)
                }
            }
        }
        Cmd::Validate { config } => match load_config(&config) {
            Ok(cfg) => {
                print!("{}", cfg.to_toml());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("configuration error: {e}");
                ExitCode::from(2)
            }
        },
        Cmd::Audit { run_dir } => match audit_dir(&run_dir) {
            Ok(report) => {
                for line in &report.lines {
                    println!("{line}");
                }
                if report.pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => {
                eprintln!("audit error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
