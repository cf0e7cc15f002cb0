use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use doublefield_cli::{exit_code, run, Cli};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let outcome = match run(&cli, &argv) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    for n in &outcome.report.notes {
        eprintln!("note: {n}");
    }
    let body = if cli.global.json {
        serde_json::to_string_pretty(&outcome.report).expect("report serializes") + "\n"
    } else {
        outcome.text + "\n"
    };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(if outcome.failed { 1 } else { 0 })
}
