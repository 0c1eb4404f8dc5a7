//! `revoflow`: run, sweep and analyze Willmore flows of tori of revolution.
//!
//! Exit status is 0 whenever a run reaches a classified outcome, singular or not,
//! and 1 on configuration, I/O or invariant errors.

mod analyze;
mod config;
mod gen;
mod perturb;
mod simulate;
mod svg;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "revoflow", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one flow described by a TOML config.
    Simulate { config: PathBuf },
    /// Report energies, identities and the conformal class of a curve snapshot.
    Analyze {
        curve: PathBuf,
        /// Also compute the concentration radius at this energy level.
        #[arg(long)]
        epsilon0: Option<f64>,
        /// Write the JSON report here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the flow from circles of each conformal class in a grid.
    Sweep { config: PathBuf },
    /// Write an initial curve in the snapshot format.
    Gen(gen::GenArgs),
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate { config } => simulate::run(&config),
        Command::Analyze {
            curve,
            epsilon0,
            output,
        } => analyze::run(&curve, epsilon0, output.as_deref()),
        Command::Sweep { config } => sweep::run(&config),
        Command::Gen(args) => gen::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
