mod args;
mod commands;
mod input;
mod output;
mod table2;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// A failed command: message for stderr and the process exit code
/// (1 input error, 2 degenerate envelope, 3 numeric-consistency failure).
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }

    pub fn io(e: impl std::fmt::Display) -> Self {
        Failure::input(format!("I/O error: {e}"))
    }
}

pub fn exit_code(e: &uniratio::Error) -> u8 {
    use uniratio::Error::*;
    match e {
        DegenerateEnvelope => 2,
        ClassificationUnstable { .. }
        | GridInstability(_)
        | RootFinder(_)
        | Integrality { .. }
        | HalfIntegerFrequency => 3,
        InvalidSpec(_)
        | ZeroEndpoint { .. }
        | DegreeTooSmall { .. }
        | LeadingCancellation { .. }
        | Overflow
        | NonPalindromic
        | ZeroPolynomial
        | InvalidFamily(_) => 1,
    }
}

impl From<uniratio::Error> for Failure {
    fn from(e: uniratio::Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::LimitRatio(a) => commands::limit_ratio(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Table2(a) => commands::table2(&a),
        Command::Salem(a) => commands::salem(&a),
        Command::Hbounds(a) => commands::hbounds(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
