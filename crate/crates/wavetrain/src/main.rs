use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use wavetrain::cli::{execute, CommandKind};

/// Steady water-wave solver and dynamic-pressure verifier.
#[derive(Parser)]
#[command(name = "wavetrain", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one wave train; writes state.json and residuals.json
    Solve(Run),
    /// Check every flow invariant; writes report.json
    Verify(Run),
    /// Export the sampled flow field; writes field.csv
    Field(Run),
    /// Solve and verify a list of wave heights; writes sweep.csv
    Sweep(Run),
}

#[derive(clap::Args)]
struct Run {
    /// Path to a line-oriented `key = value` configuration file
    config: PathBuf,
    /// Output directory (defaults to the current directory)
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, run) = match cli.command {
        Command::Solve(r) => (CommandKind::Solve, r),
        Command::Verify(r) => (CommandKind::Verify, r),
        Command::Field(r) => (CommandKind::Field, r),
        Command::Sweep(r) => (CommandKind::Sweep, r),
    };
    ExitCode::from(execute(kind, &run.config, run.out))
}
