use std::f64::consts::PI;

use num_complex::Complex64;
use realzeros_core::zeros::grid;

use crate::config::MINUS;
use crate::Failure;

/// A decimal number, optionally with a `pi` suffix: `2pi` is `2.0 * PI`,
/// the double nearest to `2 pi`.
pub fn real(s: &str) -> Result<f64, Failure> {
    let unmarked = s.trim().replace(MINUS, "-");
    let t = unmarked.as_str();
    let bad = || Failure::Invalid(format!("not a number: {s:?}"));
    let v = match t.strip_suffix("pi") {
        Some("") | Some("+") => PI,
        Some("-") => -PI,
        Some(coef) => coef.parse::<f64>().map_err(|_| bad())? * PI,
        None => t.parse::<f64>().map_err(|_| bad())?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

pub fn positive(s: &str, flag: &str) -> Result<f64, Failure> {
    let v = real(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(Failure::Invalid(format!("--{flag} must be positive, got {s}")))
    }
}

/// Concatenates `lo:hi:step` ranges and plain values.
pub fn values(tokens: &[String], flag: &str) -> Result<Vec<f64>, Failure> {
    let mut out = Vec::new();
    for tok in tokens {
        let parts: Vec<&str> = tok.split(':').collect();
        match parts.as_slice() {
            [v] => out.push(real(v)?),
            [lo, hi, step] => {
                let g = grid(real(lo)?, real(hi)?, real(step)?)
                    .map_err(|e| Failure::Invalid(format!("--{flag}: {e}")))?;
                out.extend(g);
            }
            _ => {
                return Err(Failure::Invalid(format!(
                    "--{flag}: expected lo:hi:step or a number, got {tok:?}"
                )))
            }
        }
    }
    Ok(out)
}

pub fn values_or(tokens: &[String], flag: &str, default: &[f64]) -> Result<Vec<f64>, Failure> {
    if tokens.is_empty() {
        Ok(default.to_vec())
    } else {
        values(tokens, flag)
    }
}

pub fn required(tokens: &[String], flag: &str) -> Result<Vec<f64>, Failure> {
    if tokens.is_empty() {
        return Err(Failure::Invalid(format!("--{flag} is required")));
    }
    values(tokens, flag)
}

/// `3`, `2i`, `-i`, `1.5-0.5i`, `2pi+1i`.
pub fn complex(s: &str) -> Result<Complex64, Failure> {
    let unmarked = s.trim().replace(MINUS, "-");
    let t = unmarked.as_str();
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(real(t)?, 0.0));
    };
    // The sign that separates the parts is the last one not opening the
    // string and not belonging to an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |p: &str| match p {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(p),
    };
    match split {
        Some(k) => Ok(Complex64::new(real(&body[..k])?, imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
    .map_err(|_: Failure| Failure::Invalid(format!("not a complex number: {s:?}")))
}
