//! `comblab`: checkers, witnesses and transforms for combs, weaves, grids and
//! cograph patterns, with JSON (or DOT) on stdout and a short summary on
//! stderr.
//!
//! Exit codes: 0 ok, 1 checked and failed, 2 usage or contract error,
//! 3 resource bound exceeded.

mod args;
mod run;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match run::run(&cli) {
        Ok(code) => code,
        Err(e) => run::report_error(&e),
    }
}
