//! The kernels `f_t(y)` and `g_{t,c}(y)` that weight the square-integral
//! decompositions, their Taylor expansions at `y = 0`, and property scans.

mod oracle;
mod scan;
mod taylor;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use oracle::{contour_coefficients, contour_derivatives, ContourCoefficients};
pub use scan::{
    scan_kernel_properties, CoefficientMinimum, KernelGrid, KernelPropertyReport, OracleCheck,
    ScanStatus, COEFFICIENT_CLAIM_TOL, CONJECTURE_TOL, ODD_TOL,
};
pub use taylor::{f_taylor, g_taylor, MAX_ORDER};

use crate::error::{Error, Result};
use crate::numerics::hypergeometric::hyp2f1_complex_complement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelPoint {
    pub t: f64,
    pub c: f64,
    pub y: f64,
}

pub(crate) fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("kernel parameter t = {t} outside (0, 1)")))
    }
}

/// `P(y) t^{y+s} 2F1(y+1, y+2s+1; 2; 1-t)` with `P(y) = y (y + 2s)`.
fn shifted_term(t: f64, s: f64, y: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    let hyp = hyp2f1_complex_complement(y + one, y + 2.0 * s + 1.0, two, t)?;
    Ok(y * (y + 2.0 * s) * ((y + s) * t.ln()).exp() * hyp)
}

/// `f_t(y) = y^2 t^y 2F1(y+1, y+1; 2; 1-t)` at complex `y`.
pub fn f_kernel_complex(t: f64, y: Complex64) -> Result<Complex64> {
    check_t(t)?;
    shifted_term(t, 0.0, y)
}

/// `g_{t,c}(y)` at complex `y`.
pub fn g_kernel_complex(t: f64, c: f64, y: Complex64) -> Result<Complex64> {
    check_t(t)?;
    let plus = shifted_term(t, c, y)?;
    let minus = shifted_term(t, -c, y)?;
    let centre = shifted_term(t, 0.0, y)?;
    Ok(plus + minus - 2.0 * centre)
}

/// `f_t(y)` on the closed interval `0 < t <= 1`, for quadrature nodes that
/// round to `t = 1`.
pub(crate) fn f_kernel_closed(t: f64, y: Complex64) -> Result<Complex64> {
    if t == 1.0 {
        return Ok(y * y);
    }
    f_kernel_complex(t, y)
}

/// `g_{t,c}(y)` on `0 < t <= 1`; `g_{1,c}` vanishes identically.
pub(crate) fn g_kernel_closed(t: f64, c: f64, y: f64) -> Result<f64> {
    if t == 1.0 {
        return Ok(0.0);
    }
    g_kernel(t, c, y)
}

pub fn f_kernel(t: f64, y: f64) -> Result<f64> {
    f_kernel_complex(t, Complex64::new(y, 0.0)).map(|v| v.re)
}

pub fn g_kernel(t: f64, c: f64, y: f64) -> Result<f64> {
    g_kernel_complex(t, c, Complex64::new(y, 0.0)).map(|v| v.re)
}

/// Either kernel at a grid point.
pub fn kernel_value(kind: KernelKind, p: KernelPoint) -> Result<f64> {
    match kind {
        KernelKind::F => f_kernel(p.t, p.y),
        KernelKind::G => g_kernel(p.t, p.c, p.y),
    }
}
