mod args;
mod commands;
mod points;

use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// A computed value disagrees with theory: a violation or a failed reproduction.
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Core(#[from] ndist_core::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) | CliError::Core(ndist_core::Error::Violation { .. }) => 1,
            CliError::Usage(_) | CliError::Core(_) => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ndist: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Mismatch("x".into()).exit_code(), 1);
        assert_eq!(CliError::Core(ndist_core::Error::Violation { numerator: 1.0 }).exit_code(), 1);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Core(ndist_core::Error::Usage("x".into())).exit_code(), 2);
    }
}
