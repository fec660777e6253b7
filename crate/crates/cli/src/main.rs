//! `provkernel`: command-line front end.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(anyhow::Error),
    Internal(anyhow::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Data(e) => write!(f, "data error: {e:#}"),
            CliError::Internal(e) => write!(f, "internal error: {e:#}"),
        }
    }
}

/// Wraps library errors as data errors.
pub fn data<E: Into<anyhow::Error>>(e: E) -> CliError {
    CliError::Data(e.into())
}

pub fn internal<E: Into<anyhow::Error>>(e: E) -> CliError {
    CliError::Internal(e.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new()
        .filter_level(if cli.verbose { log::LevelFilter::Info } else { log::LevelFilter::Warn })
        .parse_default_env()
        .init();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("usage error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("internal error: {e}");
            return ExitCode::from(4);
        }
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("provkernel: {e}");
            ExitCode::from(e.code())
        }
    }
}
