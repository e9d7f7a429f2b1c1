use std::f64::consts::PI;

use num_complex::Complex64;

use super::{check_a, real, ErrorSlot, Identity, IdentityReport, Inputs, ARGUMENT_CAP};
use super::{K_SQUARE_TOL, XI_STAR_TOL};
use crate::error::{Error, Result};
use crate::functions::{eval_k_nu, eval_k_nu_with, eval_xi_star};
use crate::numerics::{hyp2f1_complement, integrate_unit_interval, QuadratureSpec};

/// Samples of a nonnegative integrand may dip below zero by round-off only.
const NEGATIVE_TOL: f64 = 1e-14;

/// `K_{ix}(b)^2`, or zero once `e^{-b}` underflows.
pub(crate) fn k_ix_squared(x: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    if b > ARGUMENT_CAP {
        return Ok(0.0);
    }
    let k = eval_k_nu_with(Complex64::new(0.0, x), b, spec)?.re;
    Ok(k * k)
}

fn l_integrand(a: f64, x: f64, y: f64, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    let k2 = k_ix_squared(x, a / t.sqrt(), spec)?;
    if k2 == 0.0 {
        return Ok(0.0);
    }
    let h = hyp2f1_complement(y + 1.0, y + 1.0, 2.0, t)?;
    Ok(t.powf(y - 1.0) * h * k2)
}

/// `int_0^1 t^{y-1} 2F1(y+1, y+1; 2; 1-t) K_{ix}(a/sqrt t)^2 dt`, with the
/// samples checked for sign.
fn l_integral(a: f64, x: f64, y: f64, spec: &QuadratureSpec) -> Result<f64> {
    let mut slot = ErrorSlot::default();
    let mut lowest = (f64::INFINITY, 0.0);
    let mut scale = 0.0f64;
    let q = integrate_unit_interval(
        |t| {
            let v = slot.take(l_integrand(a, x, y, t, spec));
            if v < lowest.0 {
                lowest = (v, t);
            }
            scale = scale.max(v.abs());
            v
        },
        spec,
    )?;
    slot.check()?;
    if lowest.0 < -NEGATIVE_TOL * scale {
        return Err(Error::IntegrandNegative {
            t: lowest.1,
            value: lowest.0,
        });
    }
    Ok(q.value)
}

/// `L_a(x, y)`, the coefficient of `y^2` in the decomposition of `|K_{iz}(a)|^2`.
pub fn eval_l(a: f64, x: f64, y: f64) -> Result<f64> {
    check_a(a)?;
    l_integral(a, x, y, &QuadratureSpec::default())
}

pub fn verify_k_square_decomposition(
    a: f64,
    x: f64,
    y: f64,
    spec: &QuadratureSpec,
) -> Result<IdentityReport> {
    check_a(a)?;
    spec.validate()?;
    let lhs = eval_k_nu_with(Complex64::new(-y, x), a, spec)?.norm_sqr();
    let mut rhs = k_ix_squared(x, a, spec)?;
    if y != 0.0 {
        rhs += y * y * l_integral(a, x, y, spec)?;
    }
    let inputs = Inputs {
        identity: Identity::KSquare,
        a,
        c: None,
        x,
        y,
    };
    Ok(IdentityReport::judge(
        inputs,
        real(lhs),
        real(rhs),
        K_SQUARE_TOL,
        1e-300,
    ))
}

/// `Xi*(z)` from its own transform against the pair of `K` values at `2 pi`.
pub fn verify_xi_star_k(z: Complex64) -> Result<IdentityReport> {
    let lhs = eval_xi_star(z)?;
    let half = Complex64::i() * z * 0.5;
    let rhs = (eval_k_nu(half - 2.25, 2.0 * PI)? + eval_k_nu(half + 2.25, 2.0 * PI)?)
        * (4.0 * PI * PI);
    let inputs = Inputs {
        identity: Identity::XiStarK,
        a: 2.0 * PI,
        c: Some(2.25),
        x: z.re,
        y: z.im,
    };
    Ok(IdentityReport::judge(inputs, lhs, rhs, XI_STAR_TOL, 1.0))
}
