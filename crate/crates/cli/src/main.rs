//! `apaver`: tables, point-count verification and apartment figures for the
//! level-`a` paving of the `PGL(3)` affine Grassmannian.

mod commands;
mod config;
mod figure;

use std::process::ExitCode;

use clap::Parser;

use crate::config::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("apaver: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
