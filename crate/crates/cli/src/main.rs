// Argument checks are written `!(v > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod config;
mod parse;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::json;

use args::Cli;
use report::{RunReport, Summary};

/// Why a run stopped before producing a report.
#[derive(Debug)]
pub enum Failure {
    /// Exit 2: the request itself is invalid.
    Invalid(String),
    /// Exit 1: a sampled quantity contradicts a claimed inequality.
    Claim(String),
    /// Exit 3: the numerics could not deliver a trustworthy value.
    Numerical(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Claim(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Claim(m) | Failure::Numerical(m) => m,
        }
    }
}

fn set_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("REALZEROS_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Invalid(format!("REALZEROS_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Numerical(format!("cannot start thread pool: {e}")))
}

/// Restores the signs replaced by [`config::MINUS`] for the config echo.
fn unmark(v: serde_json::Value) -> serde_json::Value {
    use serde_json::Value;
    match v {
        Value::String(s) => Value::String(s.replace(config::MINUS, "-")),
        Value::Array(items) => Value::Array(items.into_iter().map(unmark).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, unmark(v))).collect()),
        other => other,
    }
}

fn run() -> Result<u8, Failure> {
    let argv = config::expand(std::env::args_os().collect())?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    set_threads()?;

    let start = Instant::now();
    let out = commands::run(&cli.command)?;
    let wall = start.elapsed().as_secs_f64();

    let report = RunReport {
        schema: "1",
        command: cli.command.name(),
        config: json!({
            "format": cli.format,
            "args": unmark(serde_json::to_value(&cli.command).expect("arguments serialize")),
        }),
        results: &out.results,
        details: out.details.as_ref(),
        summary: Summary::tally(&out.verdicts),
        exit_code: out.exit,
        wall_time_s: wall,
    };
    let bytes = report::render(&report, &out, cli.format)?;
    report::emit(&bytes, cli.out.as_deref())?;
    Ok(out.exit)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
