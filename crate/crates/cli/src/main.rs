mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Exit statuses. Clap exits with 2 on its own for usage errors.
const EXIT_CLAIM_FAILED: u8 = 1;
const EXIT_BUDGET: u8 = 3;
const EXIT_INVALID_INPUT: u8 = 4;
const EXIT_IO: u8 = 5;

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error(transparent)]
    Core(#[from] candynim::Error),
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("malformed json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_budget() => EXIT_BUDGET,
            Failure::Core(_) | Failure::Json(_) => EXIT_INVALID_INPUT,
            Failure::Io(..) | Failure::Csv(_) => EXIT_IO,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, &cli.config) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(outcome.stdout.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(EXIT_IO);
            }
            if outcome.claim_failed {
                ExitCode::from(EXIT_CLAIM_FAILED)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("candynim: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
