//! `prnopt` — design binary spreading code families with low periodic
//! auto- and cross-correlation.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 infeasible
//! constraint system, 3 numerical failure.

mod benchmark;
mod evaluate;
mod optimize;
mod presets;
mod sink;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use prnopt_core::Error;

#[derive(Parser)]
#[command(
    name = "prnopt",
    version,
    about = "Design binary spreading code families with low periodic correlation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimize a code family's correlation objective and write artifacts
    Optimize(optimize::OptimizeArgs),
    /// Report objective, correlation statistics, and a constraint audit for a code file
    Evaluate(evaluate::EvaluateArgs),
    /// Run a named experiment suite and write comparison tables
    Benchmark(benchmark::BenchmarkArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version to stdout and usage errors to stderr.
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match cli.command {
        Command::Optimize(args) => optimize::run(args),
        Command::Evaluate(args) => evaluate::run(args),
        Command::Benchmark(args) => benchmark::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Infeasible(_) => 2,
        Error::Numerical(_) => 3,
        _ => 1,
    }
}

/// Prints one line to stdout, treating a closed pipe as success so output
/// can be piped into `head` and friends.
pub fn print_line(s: &str) -> prnopt_core::Result<()> {
    use std::io::Write;
    match writeln!(std::io::stdout().lock(), "{s}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}
