use num_complex::Complex64;

use super::{check_a, real, ErrorSlot, Identity, IdentityReport, Inputs, ARGUMENT_CAP};
use super::{F_DECOMPOSITION_TOL, F_EXPANSION_TOL};
use crate::error::Result;
use crate::functions::{eval_f, eval_k_nu};
use crate::kernels::{f_kernel_closed, g_kernel_closed};
use crate::numerics::{integrate_unit_interval, QuadratureSpec};

fn inputs(identity: Identity, a: f64, c: f64, x: f64, y: f64) -> Inputs {
    Inputs {
        identity,
        a,
        c: Some(c),
        x,
        y,
    }
}

/// `|F_{a,c}(z)|^2` against the four products of `K` at orders `ix -+ y -+ c`.
pub fn verify_f_square_expansion(a: f64, c: f64, x: f64, y: f64) -> Result<IdentityReport> {
    check_a(a)?;
    let lhs = eval_f(a, c, Complex64::new(x, y))?.norm_sqr();
    let k = |re: f64| eval_k_nu(Complex64::new(re, x), a);
    let (mm, mp) = (k(-y - c)?, k(-y + c)?);
    let (pm, pp) = (k(y - c)?, k(y + c)?);
    let rhs = mm * pm + mm * pp + mp * pm + mp * pp;
    Ok(IdentityReport::judge(
        inputs(Identity::FSquareExpansion, a, c, x, y),
        real(lhs),
        rhs,
        F_EXPANSION_TOL,
        1e-300,
    ))
}

/// `f_t(y) F_{b,c}(x)^2 + g_{t,c}(y) |K_{i(x+ic)}(b)|^2` with `b = a / sqrt t`.
fn decomposition_integrand(a: f64, c: f64, x: f64, y: f64, t: f64) -> Result<f64> {
    let b = a / t.sqrt();
    if b > ARGUMENT_CAP {
        return Ok(0.0);
    }
    let f_val = eval_f(b, c, real(x))?.re;
    let k_shift = eval_k_nu(Complex64::new(-c, x), b)?.norm_sqr();
    Ok(f_kernel_closed(t, real(y))?.re * f_val * f_val + g_kernel_closed(t, c, y)? * k_shift)
}

/// `|F_{a,c}(z)|^2 = F_{a,c}(x)^2 + int_0^1 [f_t(y) F_{a/sqrt t,c}(x)^2
/// + g_{t,c}(y) |K_{i(x+ic)}(a/sqrt t)|^2] dt/t`.
pub fn verify_f_square_decomposition(a: f64, c: f64, x: f64, y: f64) -> Result<IdentityReport> {
    check_a(a)?;
    let lhs = eval_f(a, c, Complex64::new(x, y))?.norm_sqr();
    let f_x = eval_f(a, c, real(x))?.re;
    let mut rhs = f_x * f_x;
    if y != 0.0 {
        let mut slot = ErrorSlot::default();
        let q = integrate_unit_interval(
            |t| slot.take(decomposition_integrand(a, c, x, y, t)) / t,
            &QuadratureSpec::default(),
        )?;
        slot.check()?;
        rhs += q.value;
    }
    Ok(IdentityReport::judge(
        inputs(Identity::FSquareDecomposition, a, c, x, y),
        real(lhs),
        real(rhs),
        F_DECOMPOSITION_TOL,
        1e-300,
    ))
}
