use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use tfzn_cli::config::ExperimentConfig;
use tfzn_cli::report::write_summary;
use tfzn_cli::suite::{run_suite, DEFAULT_SUITE_SEED};
use tfzn_cli::{experiments, RunError};

/// Finite time-frequency analysis experiments on Z_N.
#[derive(Parser)]
#[command(name = "tfzn", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configured experiment.
    Run {
        /// TOML configuration file.
        config: PathBuf,
        /// Override the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the JSON summary to stdout.
        #[arg(long)]
        json: bool,
    },
    /// Run the acceptance battery and print a pass/fail table.
    Suite {
        /// Optional config; only seed and output_dir are consulted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override the seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory for the suite summary.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the JSON summary to stdout.
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch() -> Result<(), RunError> {
    match Cli::parse().command {
        Command::Run {
            config,
            seed,
            out,
            json,
        } => {
            let mut cfg = ExperimentConfig::from_path(&config)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(out) = out {
                cfg.output_dir = out;
            }
            let resolved = cfg.resolve()?;
            let output = experiments::run(&resolved)?;
            if json {
                print!("{}", output.summary_json);
            }
            if let Some(path) = &output.artifacts.summary {
                eprintln!("wrote {}", path.display());
            }
            for f in &output.artifacts.files {
                eprintln!("wrote {}", f.display());
            }
            Ok(())
        }
        Command::Suite {
            config,
            seed,
            out,
            json,
        } => {
            let mut suite_seed = DEFAULT_SUITE_SEED;
            let mut out_dir = PathBuf::from("out");
            if let Some(path) = config {
                let cfg = ExperimentConfig::from_path(&path)?;
                suite_seed = cfg.seed;
                out_dir = cfg.output_dir;
            }
            if let Some(seed) = seed {
                suite_seed = seed;
            }
            if let Some(out) = out {
                out_dir = out;
            }
            let outcome = run_suite(suite_seed);
            for c in &outcome.criteria {
                println!(
                    "criterion {:>2}  {:<28} {}  {}",
                    c.index,
                    c.name,
                    if c.passed { "PASS" } else { "FAIL" },
                    c.details
                );
            }
            let path = out_dir.join("suite_summary.json");
            write_summary(&path, &outcome.summary_json)?;
            eprintln!("wrote {}", path.display());
            if json {
                print!("{}", outcome.summary_json);
            }
            if outcome.all_passed {
                Ok(())
            } else {
                Err(RunError::Assertion(format!(
                    "failed criteria: {}",
                    outcome.failed_names().join(", ")
                )))
            }
        }
    }
}
