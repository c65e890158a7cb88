//! `threshold-gt`: construct measurement matrices, verify their
//! properties, and run decoding trials.
//!
//! Exit codes: 0 success, 1 property does not hold, 2 usage or input
//! error, 3 instance exceeds a resource cap.

mod construct;
mod manifest;
mod simulate;
mod verify;

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use threshold_gt::{BooleanMatrix, Error};

#[derive(Parser)]
#[command(
    name = "threshold-gt",
    version,
    about = "Threshold group testing toolkit"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "THRESHOLD_GT_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a measurement matrix and write it with a manifest.
    Construct(construct::Args),
    /// Check a matrix property and print a JSON report.
    Verify(verify::Args),
    /// Run planted-vector decoding trials.
    Simulate(simulate::Args),
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_too_large() { 3 } else { 2 },
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

pub type CliResult<T> = Result<T, Failure>;

/// Unwraps a flag that the chosen mode requires.
pub fn need<T>(value: Option<T>, flag: &str, context: &str) -> CliResult<T> {
    value.ok_or_else(|| Failure::usage(format!("{context} requires --{flag}")))
}

pub fn read_matrix(path: &Path) -> CliResult<BooleanMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    BooleanMatrix::from_text(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Failure::usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    match cli.command {
        Command::Construct(a) => construct::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Simulate(a) => simulate::run(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
