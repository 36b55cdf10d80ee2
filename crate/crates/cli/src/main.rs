mod args;
mod commands;
mod files;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Ctx;

/// Failures that end a run with exit code 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(tracelab::Error),
    Io(PathBuf, std::io::Error),
}

impl From<tracelab::Error> for CliError {
    fn from(e: tracelab::Error) -> Self {
        CliError::Lib(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut ctx = Ctx {
        pretty: cli.pretty,
        out: cli.out,
        run: manifest::Run::start(),
    };
    let result = match cli.command {
        Command::Construct(a) => commands::construct(&mut ctx, a),
        Command::Check(a) => commands::check(&mut ctx, a),
        Command::Search(a) => commands::search(&mut ctx, a),
        Command::VerifyTable(a) => commands::verify_table(&mut ctx, a),
        Command::Reduce(a) => commands::reduce(&mut ctx, a),
        Command::Symmetrize(a) => commands::symmetrize_cmd(&mut ctx, a),
        Command::Partition(a) => commands::partition(&mut ctx, a),
        Command::Cancellative(a) => commands::cancellative(&mut ctx, a),
        Command::Ex3(a) => commands::ex3_cmd(&mut ctx, a),
        Command::Crosscheck(a) => commands::crosscheck(&mut ctx, a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("tracelab: {e}");
            ExitCode::from(2)
        }
    }
}
