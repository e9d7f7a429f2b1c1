use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::FunctionId;
use crate::numerics::diff::{first_derivative, second_derivative};

/// Both quantities are judged against `-JENSEN_TOL` times the largest
/// `|F|^2` on the same vertical grid line.
pub const JENSEN_TOL: f64 = 1e-8;
const FIRST_STEP: f64 = 1e-3;
const SECOND_STEP: f64 = 3e-3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JensenReport {
    pub function: String,
    /// Smallest `y d/dy |F|^2` divided by the line scale, and where.
    pub min_first: f64,
    pub min_first_at: [f64; 2],
    /// Smallest `d^2/dy^2 |F|^2` divided by the line scale, and where.
    pub min_second: f64,
    pub min_second_at: [f64; 2],
    pub min_first_raw: f64,
    pub min_second_raw: f64,
    pub points: usize,
    pub tol: f64,
    pub pass: bool,
}

struct Line {
    first: (f64, f64, f64),
    second: (f64, f64, f64),
}

fn scan_line<F>(f: &F, x: f64, ys: &[f64]) -> Result<Line>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let sq = |y: f64| f(Complex64::new(x, y)).map(|v| v.norm_sqr());
    let mut scale = 0.0f64;
    let mut rows = Vec::with_capacity(ys.len());
    for &y in ys {
        scale = scale.max(sq(y)?);
        let q1 = if y == 0.0 {
            0.0
        } else {
            y * first_derivative(sq, y, FIRST_STEP)?
        };
        let q2 = second_derivative(sq, y, SECOND_STEP)?;
        rows.push((y, q1, q2));
    }
    let norm = if scale > 0.0 { scale } else { 1.0 };
    let mut first = (f64::INFINITY, 0.0, 0.0);
    let mut second = (f64::INFINITY, 0.0, 0.0);
    for (y, q1, q2) in rows {
        if q1 / norm < first.0 {
            first = (q1 / norm, y, q1);
        }
        if q2 / norm < second.0 {
            second = (q2 / norm, y, q2);
        }
    }
    Ok(Line { first, second })
}

/// Minima of Jensen's quantities `y d/dy |F(x+iy)|^2` and
/// `d^2/dy^2 |F(x+iy)|^2` over a grid, by central differences in `y`.
pub fn jensen_scan_with<F>(f: F, name: &str, xs: &[f64], ys: &[f64]) -> Result<JensenReport>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::Parameter("Jensen scan needs nonempty grids".into()));
    }
    let lines: Vec<Line> = xs
        .par_iter()
        .map(|&x| scan_line(&f, x, ys))
        .collect::<Result<_>>()?;
    let mut report = JensenReport {
        function: name.to_string(),
        min_first: f64::INFINITY,
        min_first_at: [0.0; 2],
        min_second: f64::INFINITY,
        min_second_at: [0.0; 2],
        min_first_raw: 0.0,
        min_second_raw: 0.0,
        points: xs.len() * ys.len(),
        tol: JENSEN_TOL,
        pass: false,
    };
    for (&x, line) in xs.iter().zip(&lines) {
        if line.first.0 < report.min_first {
            report.min_first = line.first.0;
            report.min_first_at = [x, line.first.1];
            report.min_first_raw = line.first.2;
        }
        if line.second.0 < report.min_second {
            report.min_second = line.second.0;
            report.min_second_at = [x, line.second.1];
            report.min_second_raw = line.second.2;
        }
    }
    report.pass = report.min_first >= -JENSEN_TOL && report.min_second >= -JENSEN_TOL;
    Ok(report)
}

pub fn jensen_scan(fid: &FunctionId, xs: &[f64], ys: &[f64]) -> Result<JensenReport> {
    fid.validate()?;
    jensen_scan_with(|z| fid.eval(z), &fid.to_string(), xs, ys)
}
