use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;
use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Finding,
    /// Rows that are plain values (evaluations, zero locations).
    Unjudged,
}

/// What a command hands back for reporting.
pub struct Output {
    pub results: Vec<Value>,
    pub verdicts: Vec<Verdict>,
    pub details: Option<Value>,
    pub csv_header: &'static [&'static str],
    pub csv_rows: Vec<Vec<String>>,
    pub exit: u8,
}

#[derive(Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub rows: usize,
    pub pass: usize,
    pub fail: usize,
    pub finding: usize,
    pub unjudged: usize,
}

impl Summary {
    pub fn tally(verdicts: &[Verdict]) -> Self {
        let count = |v| verdicts.iter().filter(|&&x| x == v).count();
        Self {
            rows: verdicts.len(),
            pass: count(Verdict::Pass),
            fail: count(Verdict::Fail),
            finding: count(Verdict::Finding),
            unjudged: count(Verdict::Unjudged),
        }
    }
}

#[derive(Serialize)]
pub struct RunReport<'a> {
    pub schema: &'static str,
    pub command: &'static str,
    pub config: Value,
    pub results: &'a [Value],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<&'a Value>,
    pub summary: Summary,
    pub exit_code: u8,
    pub wall_time_s: f64,
}

/// Shortest round-trip form, switching to exponent notation away from 1.
pub fn num(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e15).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

pub fn render(report: &RunReport, out: &Output, format: Format) -> Result<Vec<u8>, Failure> {
    match format {
        Format::Json => {
            let mut buf = serde_json::to_vec_pretty(report)
                .map_err(|e| Failure::Numerical(format!("cannot serialize report: {e}")))?;
            buf.push(b'\n');
            Ok(buf)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Failure::Numerical(format!("cannot write CSV: {e}"));
            w.write_record(out.csv_header).map_err(io)?;
            for row in &out.csv_rows {
                w.write_record(row).map_err(io)?;
            }
            w.into_inner()
                .map_err(|e| Failure::Numerical(format!("cannot write CSV: {e}")))
        }
    }
}

pub fn emit(bytes: &[u8], path: Option<&std::path::Path>) -> Result<(), Failure> {
    let res = match path {
        Some(p) => std::fs::write(p, bytes),
        None => std::io::stdout().lock().write_all(bytes),
    };
    res.map_err(|e| Failure::Numerical(format!("cannot write report: {e}")))
}
