use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use linkgraph_cli::args::Cli;
use linkgraph_cli::{commands, init_threads, write_atomic, CliError};

fn run() -> Result<i32, CliError> {
    let cli = Cli::parse();
    init_threads()?;
    let out = commands::run(&cli)?;
    match &cli.out {
        Some(path) => write_atomic(path, &out.text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(out.text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::new(linkgraph_cli::EXIT_PARSE, e.to_string()))?;
        }
    }
    Ok(out.code)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("linkgraph: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
