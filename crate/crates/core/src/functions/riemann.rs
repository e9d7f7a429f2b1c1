//! The kernel `Phi(u)` and the Riemann function `Xi(z) = 2 int_0^inf Phi(u) cos(zu) du`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::transform::{real_on_axis, truncation_point};
use crate::error::{Error, Result};
use crate::numerics::quadrature::{integrate_even, QuadratureSpec};

/// Truncation of the sum over `n` in `Phi`. `None` sums until the first
/// omitted term is below `1e-300`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PhiTruncation {
    pub n_max: Option<usize>,
}

impl PhiTruncation {
    pub const ADAPTIVE: Self = Self { n_max: None };

    pub fn fixed(n_max: usize) -> Self {
        Self {
            n_max: Some(n_max.max(1)),
        }
    }
}

const ADAPTIVE_CAP: usize = 200;
const TERM_FLOOR: f64 = 1e-300;

/// `n`-th term `(4 n^4 pi^2 e^{9u/2} - 6 n^2 pi e^{5u/2}) e^{-n^2 pi e^{2u}}`.
fn phi_term(n: usize, u: f64) -> f64 {
    let n2 = (n * n) as f64;
    let decay = n2 * PI * (2.0 * u).exp();
    4.0 * n2 * n2 * PI * PI * (4.5 * u - decay).exp() - 6.0 * n2 * PI * (2.5 * u - decay).exp()
}

/// `Phi(u)`, an even function of `u`.
///
/// The series is summed at `|u|`: at negative `u` its terms decay slowly
/// and cancel heavily, while at `|u|` a handful of terms suffice.
pub fn phi(u: f64, trunc: PhiTruncation) -> f64 {
    let u = u.abs();
    match trunc.n_max {
        Some(n_max) => (1..=n_max).map(|n| phi_term(n, u)).sum(),
        None => {
            let mut sum = 0.0;
            for n in 1..=ADAPTIVE_CAP {
                let t = phi_term(n, u);
                if t.abs() < TERM_FLOOR {
                    break;
                }
                sum += t;
            }
            sum
        }
    }
}

/// `Phi(u) / (8 pi^2 cosh(9u/2) e^{-2 pi cosh 2u})`.
///
/// Each term is divided by the asymptote before exponentiation, so the
/// ratio stays finite where `Phi` itself underflows (from `u` near 2.75).
pub fn phi_asymptotic_ratio(u: f64, trunc: PhiTruncation) -> f64 {
    let u = u.abs();
    let e2 = (2.0 * u).exp();
    let em2 = (-2.0 * u).exp();
    // cosh(9u/2) = e^{9u/2} (1 + e^{-9u}) / 2
    let denom = 4.0 * PI * PI * (1.0 + (-9.0 * u).exp());
    let term = |n: usize| {
        let n2 = (n * n) as f64;
        // -n^2 pi e^{2u} + 2 pi cosh 2u
        let expo = -(n2 - 1.0) * PI * e2 + PI * em2;
        (4.0 * n2 * n2 * PI * PI - 6.0 * n2 * PI * em2) * expo.exp() / denom
    };
    match trunc.n_max {
        Some(n_max) => (1..=n_max).map(term).sum(),
        None => {
            let mut sum = 0.0;
            for n in 1..=ADAPTIVE_CAP {
                let t = term(n);
                if t.abs() < TERM_FLOOR {
                    break;
                }
                sum += t;
            }
            sum
        }
    }
}

/// Largest `|Im z|` accepted by [`eval_riemann_xi`].
pub const MAX_IMAG: f64 = 8.0;

pub fn eval_riemann_xi(z: Complex64, trunc: PhiTruncation) -> Result<Complex64> {
    eval_riemann_xi_with(z, trunc, &QuadratureSpec::default())
}

pub fn eval_riemann_xi_with(
    z: Complex64,
    trunc: PhiTruncation,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    if z.im.abs() > MAX_IMAG {
        return Err(Error::Domain(format!(
            "|Im z| = {} exceeds {MAX_IMAG} for the Riemann Xi transform",
            z.im.abs()
        )));
    }
    // Phi is below ten times its leading asymptotic term everywhere.
    let upper = truncation_point(
        (80.0 * PI * PI).ln(),
        4.5 + z.im.abs(),
        2.0 * PI,
        2.0,
        spec.truncation_guard,
    )
    .unwrap_or(0.0);
    let q = integrate_even(|u| 2.0 * phi(u, trunc) * (z * u).cos(), upper, spec)?;
    real_on_axis(q.value, z)
}
