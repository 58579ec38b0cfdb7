use std::process::ExitCode;

use clap::Parser;

mod commands;

use commands::{Cli, Outcome};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli, &mut std::io::stdout().lock()) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::AboveTolerance) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
