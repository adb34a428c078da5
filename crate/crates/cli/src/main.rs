use std::process::ExitCode;

use clap::Parser;
use riccinet_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    // The program path is replaced so manifests do not depend on where the
    // binary lives.
    let command_line = std::iter::once("riccinet".to_string())
        .chain(std::env::args().skip(1))
        .collect();
    match run(cli, command_line) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
