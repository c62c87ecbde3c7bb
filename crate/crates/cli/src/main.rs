//! `biaxial`: batch evaluation, verification suites and the Dirichlet
//! solver, configured by JSON and writing CSV tables plus `summary.json`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod error;
mod eval;
mod report;
mod solve;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::RunConfig;
use error::CliError;
use report::Report;
use verify::Suite;

#[derive(Debug, Parser)]
#[command(name = "biaxial", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON run configuration; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for CSV tables and summary.json.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Node count, overriding the configuration.
    #[arg(long, global = true)]
    nodes: Option<usize>,
    /// Seed for randomized suites, overriding the configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate q4 and its gradient norm at configured point pairs.
    EvalQ4,
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Solve the interior Dirichlet problem and run a convergence study.
    SolveDirichlet,
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if cli.nodes.is_some() {
        config.nodes = cli.nodes;
    }
    if cli.seed.is_some() {
        config.seed = cli.seed;
    }
    let setup = config.validate()?;
    match cli.command {
        Command::EvalQ4 => eval::eval_q4(&setup),
        Command::Verify { suite } => verify::verify(&setup, suite),
        Command::SolveDirichlet => solve::solve(&setup),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|report| {
        report.write(&cli.out)?;
        Ok(report)
    });
    match outcome {
        Ok(report) => {
            for c in &report.checks {
                println!(
                    "{} {}: {:.3e} (limit {:.1e})",
                    if c.passed { "ok  " } else { "FAIL" },
                    c.name,
                    c.measured,
                    c.tolerance
                );
            }
            println!("{}: results in {}", report.command, cli.out.display());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
