use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Batch evaluation, identity verification, kernel scans and zero
/// certification for K-Bessel transforms and their Xi-type combinations.
///
/// Numeric values accept a `pi` suffix (`2pi`, `-pi`, `0.5pi`). Grids are
/// `lo:hi:step` or plain values, and several may follow one flag.
#[derive(Parser, Debug)]
#[command(name = "realzeros", version)]
pub struct Cli {
    /// JSON file whose keys mirror the long flags, plus "command".
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Evaluate a function on a grid of complex points.
    Eval(EvalArgs),
    /// Check an integral identity on a parameter grid.
    Verify(VerifyArgs),
    /// Scan the f and g kernels for sign, convexity and coefficient properties.
    Kernels(KernelArgs),
    /// Locate real zeros or certify that all zeros in a rectangle are real.
    #[command(subcommand)]
    Zeros(ZerosCommand),
    /// Scan the Jensen-type quantities over a grid.
    Jensen(JensenArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval(_) => "eval",
            Command::Verify(_) => "verify",
            Command::Kernels(_) => "kernels",
            Command::Zeros(ZerosCommand::Scan(_)) => "zeros scan",
            Command::Zeros(ZerosCommand::Certify(_)) => "zeros certify",
            Command::Jensen(_) => "jensen",
        }
    }
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZerosCommand {
    /// Sign changes of the function on a real interval.
    Scan(ScanArgs),
    /// Compare the zero count in a symmetric rectangle with the real zeros found.
    Certify(CertifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum FnName {
    #[value(name = "k")]
    #[serde(rename = "k")]
    K,
    #[value(name = "f")]
    #[serde(rename = "f")]
    F,
    #[value(name = "xistar")]
    #[serde(rename = "xistar")]
    XiStar,
    #[value(name = "xistarstar")]
    #[serde(rename = "xistarstar")]
    XiStarStar,
    #[value(name = "xigeneral")]
    #[serde(rename = "xigeneral")]
    XiGeneral,
    #[value(name = "riemannxi")]
    #[serde(rename = "riemannxi")]
    RiemannXi,
    #[value(name = "control-z2p1")]
    #[serde(rename = "control-z2p1")]
    ControlZ2p1,
}

#[derive(Args, Debug, Serialize)]
pub struct FnArgs {
    #[arg(long = "fn", value_enum)]
    #[serde(rename = "fn")]
    pub function: FnName,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long = "A")]
    #[serde(rename = "A")]
    pub big_a: Option<String>,
    #[arg(long = "B")]
    #[serde(rename = "B")]
    pub big_b: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct EvalArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub function: FnArgs,
    /// Real parts, combined with every `--y`.
    #[arg(long, num_args = 1..)]
    pub x: Vec<String>,
    /// Imaginary parts (default 0).
    #[arg(long, num_args = 1..)]
    pub y: Vec<String>,
    /// Individual points such as `3`, `2i` or `1.5-0.5i`.
    #[arg(long, num_args = 1..)]
    pub z: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityName {
    Kp,
    Xistar,
    Mellin,
    F2,
    F3,
    /// Both differentiated identities.
    Deriv,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub identity: IdentityName,
    #[arg(long, num_args = 1..)]
    pub a: Vec<String>,
    #[arg(long, num_args = 1..)]
    pub c: Vec<String>,
    #[arg(long, num_args = 1..)]
    pub x: Vec<String>,
    #[arg(long, num_args = 1..)]
    pub y: Vec<String>,
    /// Abscissa of the Mellin-Barnes contour (default `-(|y| + 1/2)`).
    #[arg(long)]
    pub cline: Option<String>,
    /// Half-height of the truncated Mellin-Barnes contour.
    #[arg(long, default_value = "60")]
    pub height: String,
    /// Trapezoid step along the Mellin-Barnes contour.
    #[arg(long = "contour-step", default_value = "0.05")]
    #[serde(rename = "contour-step")]
    pub contour_step: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    F,
    G,
}

#[derive(Args, Debug, Serialize)]
pub struct KernelArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    /// Default `0.1:0.9:0.1`.
    #[arg(long, num_args = 1..)]
    pub t: Vec<String>,
    /// Shifts for g (default `0.25 0.5 1 2.25`).
    #[arg(long, num_args = 1..)]
    pub c: Vec<String>,
    /// Default `-4:4:0.1`.
    #[arg(long, num_args = 1..)]
    pub y: Vec<String>,
    /// Taylor order in y (default 40 for f, 30 for g).
    #[arg(long)]
    pub order: Option<usize>,
    /// Include every Taylor coefficient in the report.
    #[arg(long = "emit-coeffs")]
    #[serde(rename = "emit-coeffs")]
    pub emit_coeffs: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct ScanArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub function: FnArgs,
    /// Interval end points.
    #[arg(long, required = true, num_args = 2, value_names = ["LO", "HI"])]
    pub x: Vec<String>,
    #[arg(long, default_value = "0.05")]
    pub step: String,
}

#[derive(Args, Debug, Serialize)]
pub struct CertifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub function: FnArgs,
    #[arg(long, required = true, num_args = 4, value_names = ["X0", "X1", "Y0", "Y1"])]
    pub rect: Vec<String>,
    /// Grid step of the real-zero scan.
    #[arg(long, default_value = "0.05")]
    pub step: String,
    /// Initial distance between boundary samples.
    #[arg(long, default_value = "0.1")]
    pub spacing: String,
}

#[derive(Args, Debug, Serialize)]
pub struct JensenArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub function: FnArgs,
    #[arg(long, num_args = 1..)]
    pub x: Vec<String>,
    #[arg(long, num_args = 1..)]
    pub y: Vec<String>,
}
