use std::io::Write;
use std::process::ExitCode;

use borel_dual::cli::{exit_code, run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli, &mut std::io::stdin()) {
        Ok(outcome) => {
            for warning in &outcome.warnings {
                eprintln!("warning: {warning}");
            }
            // a closed pipe downstream is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{}", outcome.stdout);
            ExitCode::from(outcome.code as u8)
        }
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(exit_code(&error) as u8)
        }
    }
}
