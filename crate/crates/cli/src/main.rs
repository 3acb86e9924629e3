//! `defect-loss`: microwave loss from charged defects, single hosts or whole databases.

mod chi;
mod compute;
mod output;
mod screen;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use defect_loss::screening::TableFormat;

#[derive(Debug, Parser)]
#[command(
    name = "defect-loss",
    version,
    about = "Dielectric loss from charged defects via acoustic phonon emission"
)]
pub struct Cli {
    /// Screening/physics configuration (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; a directory for `screen`.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Increase log verbosity (repeatable).
    #[arg(short, long, global = true, action = ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Text,
    Json,
}

impl From<Format> for TableFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => TableFormat::Csv,
            Format::Text => TableFormat::Text,
            Format::Json => TableFormat::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Loss figures for one host and defect population.
    Compute(compute::Args),
    /// Screen a line-delimited JSON database and rank hosts by 𝒜_c.
    Screen(screen::Args),
    /// Mass-defect coefficients N_a|χ|² over a z sweep.
    Chi(chi::Args),
    /// Regenerate the reference table from the bundled fixture.
    Table(screen::TableArgs),
}

/// Failure classes, mapped to exit codes 1 and 2.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Internal(String),
}

impl From<defect_loss::Error> for Failure {
    fn from(e: defect_loss::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

pub type CliResult<T = ()> = Result<T, Failure>;

fn run(cli: Cli) -> CliResult {
    let ctx = output::Context {
        config: cli.config,
        output: cli.output,
        format: cli.format,
    };
    match cli.command {
        Command::Compute(args) => compute::run(&ctx, args),
        Command::Screen(args) => screen::run(&ctx, args),
        Command::Chi(args) => chi::run(&ctx, args),
        Command::Table(args) => screen::table(&ctx, args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        2 => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .init();

    match std::panic::catch_unwind(move || run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failure::Input(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Ok(Err(Failure::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(2),
    }
}
