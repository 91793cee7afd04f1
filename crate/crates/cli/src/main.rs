use std::process::ExitCode;

use clap::Parser;
use fracbound::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let render = |r: &fracbound::Report| if cli.json { r.to_json() } else { r.to_text() };
    match run(&cli) {
        Ok(report) => {
            print!("{}", render(&report));
            ExitCode::SUCCESS
        }
        Err(CliError::Violation(report)) => {
            print!("{}", render(&report));
            eprintln!("error: an asserted inequality failed");
            ExitCode::from(5)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
