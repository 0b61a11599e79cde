use std::process::ExitCode;

use clap::Parser;
use orbitbound_cli::{run, Cli, EXIT_ERROR, EXIT_OK};

fn main() -> ExitCode {
    // clap's own usage exit code (2) would collide with precondition failures
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_OK });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {:#}", failure.error);
            ExitCode::from(failure.code)
        }
    }
}
