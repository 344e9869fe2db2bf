use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use superkit::script::{run, RunOptions};

/// Run a superkit session script.
#[derive(Parser)]
#[command(version, about)]
struct Args {
    /// Script file; standard input when absent.
    #[arg(long)]
    script: Option<PathBuf>,
    /// Write values named by `export` to this file as JSON.
    #[arg(long)]
    json_out: Option<PathBuf>,
    /// Continue past failing statements.
    #[arg(long)]
    keep_going: bool,
    /// Seed for `selftest` commands.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match &args.script {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read script: {e}");
            return ExitCode::from(2);
        }
    };
    let report = run(&text, &RunOptions { keep_going: args.keep_going, seed: args.seed });
    print!("{}", report.output);
    for e in &report.errors {
        eprintln!("{e}");
    }
    if let Some(path) = &args.json_out {
        if let Err(e) = std::fs::write(path, report.exports_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
