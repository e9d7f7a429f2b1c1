use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{check_a, real, Identity, IdentityReport, Inputs, MELLIN_TOL};
use crate::error::{Error, Result};
use crate::functions::eval_k_nu;
use crate::numerics::complex_ln_gamma;

/// Vertical line `Re s = c_line`, cut at `|Im s| <= height` and sampled with
/// the trapezoid rule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MellinBarnesSpec {
    pub c_line: f64,
    pub height: f64,
    pub step: f64,
}

impl MellinBarnesSpec {
    /// The line half a unit left of the first poles.
    pub fn for_y(y: f64) -> Self {
        Self {
            c_line: -(y.abs() + 0.5),
            height: 60.0,
            step: 0.05,
        }
    }

    fn validate(&self, y: f64) -> Result<()> {
        let bound = -y.abs();
        if !(self.c_line < bound) {
            return Err(Error::Contour {
                c_line: self.c_line,
                bound,
            });
        }
        if !(self.height > 0.0 && self.step > 0.0 && self.step < self.height) {
            return Err(Error::Parameter(format!(
                "contour height and step must satisfy 0 < step < height, got {self:?}"
            )));
        }
        Ok(())
    }
}

/// `ln` of `Gamma(ix-s) Gamma(-ix-s) Gamma(y-s) Gamma(-y-s) / [Gamma(-s) Gamma(1/2-s)]`.
fn ln_gamma_ratio(x: f64, y: f64, s: Complex64) -> Result<Complex64> {
    let ix = Complex64::new(0.0, x);
    let g = complex_ln_gamma;
    Ok(g(ix - s)? + g(-ix - s)? + g(real(y) - s)? + g(real(-y) - s)?
        - g(-s)?
        - g(real(0.5) - s)?)
}

/// `|K_{iz}(a)|^2` against its Mellin-Barnes integral
/// `sqrt(pi)/(4 pi i) int Gamma(...) a^{2s} ds` along `Re s = c_line`.
pub fn verify_mellin_barnes(
    a: f64,
    x: f64,
    y: f64,
    mb: &MellinBarnesSpec,
) -> Result<IdentityReport> {
    check_a(a)?;
    mb.validate(y)?;
    let ln_a2 = 2.0 * a.ln();
    let n = (mb.height / mb.step).round() as i64;
    let term = |tau: f64| -> Result<Complex64> {
        let s = Complex64::new(mb.c_line, tau);
        Ok((ln_gamma_ratio(x, y, s)? + s * ln_a2).exp())
    };
    let mut sum = Complex64::new(0.0, 0.0);
    for j in -n..=n {
        let w = if j.abs() == n { 0.5 } else { 1.0 };
        sum += term(j as f64 * mb.step)? * w;
    }
    let integral = sum * mb.step;
    let edge = term(n as f64 * mb.step)?.norm().max(term(-n as f64 * mb.step)?.norm());
    if edge > 1e-12 * integral.norm() {
        return Err(Error::NonConvergence {
            context: "Mellin-Barnes truncation",
            error: edge / integral.norm(),
            refinements: 0,
        });
    }
    // ds = i dtau cancels the 1/i of the prefactor.
    let rhs = integral * (PI.sqrt() / (4.0 * PI));
    let lhs = eval_k_nu(Complex64::new(-y, x), a)?.norm_sqr();
    let inputs = Inputs {
        identity: Identity::MellinBarnes,
        a,
        c: None,
        x,
        y,
    };
    Ok(IdentityReport::judge(inputs, real(lhs), rhs, MELLIN_TOL, 1e-300))
}
