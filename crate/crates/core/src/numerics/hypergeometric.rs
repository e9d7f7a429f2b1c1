//! Gauss hypergeometric function `2F1(a, b; c; w)` on `0 <= w <= 1`.
//!
//! The power series is summed directly for `w <= 1/2`. Beyond that the
//! hypergeometric differential equation is continued by Taylor steps from
//! `w = 1/2`, each step covering half the remaining distance to the singular
//! point `w = 1`. At `w = 1` itself Gauss's summation is used. Callers that
//! know `1 - w` exactly should pass it to the `_complement` variants.

use num_complex::Complex64;

use super::gamma::complex_rgamma;
use crate::error::{Error, Result};

const MAX_TERMS: usize = 20_000;

fn is_nonpositive_integer(c: Complex64) -> bool {
    c.im == 0.0 && c.re <= 0.0 && c.re.fract() == 0.0
}

/// Returns `(F, F')` at `w` by the power series, for `|w| <= 1/2`.
fn series_with_derivative(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    w: f64,
) -> Result<(Complex64, Complex64)> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut dsum = Complex64::new(0.0, 0.0);
    let mut quiet = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0));
        let dterm = term * ratio * (nf + 1.0);
        term *= ratio * w;
        sum += term;
        dsum += dterm;
        term_is_small(&mut quiet, term.norm() + dterm.norm() * w, sum.norm() + dsum.norm());
        if term == Complex64::new(0.0, 0.0) && dterm == Complex64::new(0.0, 0.0) {
            return Ok((sum, dsum));
        }
        if quiet >= 3 {
            return Ok((sum, dsum));
        }
    }
    Err(Error::NonConvergence {
        context: "hypergeometric series",
        error: term.norm(),
        refinements: MAX_TERMS,
    })
}

fn term_is_small(quiet: &mut usize, term: f64, total: f64) {
    if term <= 1e-17 * total {
        *quiet += 1;
    } else {
        *quiet = 0;
    }
}

/// One Taylor step of the hypergeometric ODE from `w0 = 1 - v0` by `h`.
///
/// The recurrence runs on the scaled terms `c_n h^n`, which stay bounded
/// even when `v0` is tiny and the raw coefficients would overflow.
fn ode_step(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    v0: f64,
    f0: Complex64,
    d0: Complex64,
    h: f64,
) -> Result<(Complex64, Complex64)> {
    // w(1-w) F'' + [c - (a+b+1) w] F' - ab F = 0 around w0, in powers of h.
    let w0 = 1.0 - v0;
    let p0 = w0 * v0;
    let p1 = 2.0 * v0 - 1.0;
    let q0 = c - (a + b + 1.0) * w0;
    let q1 = -(a + b + 1.0);
    let ab = a * b;

    let mut prev = f0;
    let mut cur = d0 * h;
    let mut value = prev + cur;
    let mut deriv_h = cur; // h F'(w0 + h)
    let mut quiet = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        // Scaled term n+2 from scaled terms n (prev) and n+1 (cur).
        let next = -((p1 * nf + q0) * (nf + 1.0) * cur * h
            + (-nf * (nf - 1.0) + q1 * nf - ab) * prev * (h * h))
            / (p0 * (nf + 2.0) * (nf + 1.0));
        value += next;
        let dterm = next * (nf + 2.0);
        deriv_h += dterm;
        term_is_small(
            &mut quiet,
            next.norm() + dterm.norm(),
            value.norm() + deriv_h.norm(),
        );
        if quiet >= 3 {
            return Ok((value, deriv_h / h));
        }
        if !value.norm().is_finite() {
            return Err(Error::Domain(format!(
                "2F1({a}, {b}; {c}; 1 - {v0}) overflows"
            )));
        }
        prev = cur;
        cur = next;
    }
    Err(Error::NonConvergence {
        context: "hypergeometric continuation",
        error: 0.0,
        refinements: MAX_TERMS,
    })
}

/// `2F1(a, b; c; w)` for complex parameters and real `0 <= w <= 1`.
///
/// At `w = 1` the value exists only when `Re(c - a - b) > 0`.
pub fn hyp2f1_complex(a: Complex64, b: Complex64, c: Complex64, w: f64) -> Result<Complex64> {
    if !(0.0..=1.0).contains(&w) || w.is_nan() {
        return Err(Error::Domain(format!("2F1 argument w = {w} outside [0, 1]")));
    }
    if w <= 0.5 {
        check_lower(c)?;
        return series_with_derivative(a, b, c, w).map(|(f, _)| f);
    }
    hyp2f1_complex_complement(a, b, c, 1.0 - w)
}

fn check_lower(c: Complex64) -> Result<()> {
    if is_nonpositive_integer(c) {
        return Err(Error::Parameter(format!(
            "2F1 lower parameter c = {c} is a non-positive integer"
        )));
    }
    Ok(())
}

/// `2F1(a, b; c; 1 - t)` for `0 <= t <= 1`, with the distance `t` to the
/// singular point given exactly.
pub fn hyp2f1_complex_complement(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    t: f64,
) -> Result<Complex64> {
    check_lower(c)?;
    if !(0.0..=1.0).contains(&t) || t.is_nan() {
        return Err(Error::Domain(format!("2F1 complement t = {t} outside [0, 1]")));
    }
    if t == 0.0 {
        let s = c - a - b;
        if s.re <= 0.0 {
            return Err(Error::Domain(format!(
                "2F1 diverges at w = 1 when Re(c - a - b) = {} <= 0",
                s.re
            )));
        }
        // Gauss: Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))
        let num = super::gamma::complex_gamma(c)? * super::gamma::complex_gamma(s)?;
        return Ok(num * complex_rgamma(c - a) * complex_rgamma(c - b));
    }
    if t >= 0.5 {
        return series_with_derivative(a, b, c, 1.0 - t).map(|(f, _)| f);
    }
    // Halve the distance to w = 1 at each step; v stays exact.
    let mut v0 = 0.5;
    let (mut f, mut d) = series_with_derivative(a, b, c, 0.5)?;
    while v0 > t {
        let v1 = (0.5 * v0).max(t);
        let (nf, nd) = ode_step(a, b, c, v0, f, d, v0 - v1)?;
        f = nf;
        d = nd;
        v0 = v1;
    }
    Ok(f)
}

/// Real-parameter `2F1(a, b; c; w)`.
pub fn hyp2f1(a: f64, b: f64, c: f64, w: f64) -> Result<f64> {
    let r = |x: f64| Complex64::new(x, 0.0);
    hyp2f1_complex(r(a), r(b), r(c), w).map(|v| v.re)
}

/// Real-parameter `2F1(a, b; c; 1 - t)`.
pub fn hyp2f1_complement(a: f64, b: f64, c: f64, t: f64) -> Result<f64> {
    let r = |x: f64| Complex64::new(x, 0.0);
    hyp2f1_complex_complement(r(a), r(b), r(c), t).map(|v| v.re)
}
