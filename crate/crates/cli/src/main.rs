use std::process::ExitCode;

use clap::Parser;
use xx0_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output.out {
        Some(path) => std::fs::write(path, &outcome.output).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{}", outcome.output);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    for f in &outcome.failures {
        eprintln!("verification failed: {f}");
    }
    ExitCode::from(outcome.status as u8)
}
