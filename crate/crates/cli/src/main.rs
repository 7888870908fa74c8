use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod config;
mod error;
mod expr;
mod output;

use args::{Cli, Command};
use error::CliError;

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("OOS_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("OOS_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size thread pool: {e}")))
}

fn run(cli: Cli) -> Result<String, CliError> {
    configure_threads()?;
    let out = cli.output();
    match cli.command {
        Command::Estimate(a) => commands::estimate::run(&a, &out),
        Command::Theory(a) => commands::theory::run(&a, &out),
        Command::Reproduce(a) => commands::reproduce::run(&a, &out),
        Command::Feasibility(a) => commands::feasibility::run(&a, &out),
        Command::Pathology(a) => commands::pathology::run(&a, &out),
        Command::Simulate(a) => commands::simulate::run(&a, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
