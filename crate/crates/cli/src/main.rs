use std::process::ExitCode;

use clap::{Parser, Subcommand};
use majorana::DEFAULT_MATCH_TOL;

mod commands;
mod failure;
mod files;
mod numfmt;

use commands::Via;
use failure::Failure;

/// Convert quantum states to and from their Majorana stars.
///
/// A path of `-` reads stdin or writes stdout. Exit codes: 2 I/O or parse
/// error, 3 invalid input, 4 root solver failure, 5 dimension mismatch,
/// 6 size limit exceeded, 7 verify residual too large.
#[derive(Parser)]
#[command(name = "majorana", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the stars of a state file.
    ToStars {
        input: String,
        #[arg(short, long)]
        output: Option<String>,
        /// Also write the Bloch points as CSV.
        #[arg(long)]
        csv: Option<String>,
    },
    /// Rebuild the amplitudes from a star file.
    ToState {
        input: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Print the inner product <a|b> of two state or star files.
    Inner {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "stars")]
        via: Via,
    },
    /// Mixed states given as density matrices.
    Mixed {
        #[command(subcommand)]
        command: MixedCommand,
    },
    /// Check the state -> stars -> state round trip.
    Verify {
        input: String,
        /// Bloch distance tolerance for the star rematch.
        #[arg(long, default_value_t = DEFAULT_MATCH_TOL, value_parser = positive)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum MixedCommand {
    /// Spectral decomposition into weighted star sets.
    Decompose {
        input: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Stars of the purification.
    Purify {
        input: String,
        #[arg(short, long)]
        output: Option<String>,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::ToStars { input, output, csv } => {
            commands::to_stars(&input, output.as_deref(), csv.as_deref())
        }
        Command::ToState { input, output } => commands::to_state(&input, output.as_deref()),
        Command::Inner { a, b, via } => commands::inner(&a, &b, via),
        Command::Mixed { command } => match command {
            MixedCommand::Decompose { input, output } => {
                commands::decompose(&input, output.as_deref())
            }
            MixedCommand::Purify { input, output } => commands::purify(&input, output.as_deref()),
        },
        Command::Verify { input, tol } => commands::verify(&input, tol),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("majorana: {f}");
            ExitCode::from(f.code)
        }
    }
}
