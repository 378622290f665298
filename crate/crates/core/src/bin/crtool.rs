//! crtool: batch CLI over the CR hypersurface toolkit.
//!
//! Usage: crtool <command> --spec <file> [--degree D] [--format json|text|latex]
//!        [--seed S] [--out path]
//!
//! Exit codes: 0 pass verdicts, 1 fail verdicts, 2 usage or schema errors.

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crtool::cli::{render, run_command, RunOpts, COMMANDS};

#[derive(Parser, Debug)]
#[command(
    name = "crtool",
    version,
    about = "Exact CR hypersurface model toolkit"
)]
struct Args {
    /// One of: levi, kernel, adjoint, symbol, check2nd, symmetries,
    /// tangency, classify, equivalent, homogeneous, enumerate, table.
    command: String,

    /// Path to the JSON task spec.
    #[arg(long)]
    spec: String,

    /// Verification degree bound for jet-truncated checks.
    #[arg(long)]
    degree: Option<usize>,

    /// Output format.
    #[arg(long, default_value = "json")]
    format: String,

    /// Seed for the point-sampling diagnostics.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if !COMMANDS.contains(&args.command.as_str()) {
        eprintln!(
            "error: unknown command `{}`; expected one of {}",
            args.command,
            COMMANDS.join(", ")
        );
        return ExitCode::from(2);
    }
    let spec_text = match std::fs::read_to_string(&args.spec) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.spec);
            return ExitCode::from(2);
        }
    };
    let spec: serde_json::Value = match serde_json::from_str(&spec_text) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {} is not valid JSON: {e}", args.spec);
            return ExitCode::from(2);
        }
    };
    let opts = RunOpts {
        degree: args.degree,
        seed: args.seed,
    };
    let (report, verdict) = match run_command(&args.command, &spec, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rendered = match render(&report, &args.format) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(rendered.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
        }
    }
    ExitCode::from(verdict.exit_code() as u8)
}
