use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::k_square::k_ix_squared;
use super::{check_a, real, ErrorSlot, Identity, IdentityReport, Inputs, DERIVATIVE_TOL};
use crate::error::Result;
use crate::functions::eval_k_nu;
use crate::kernels::{contour_derivatives, f_kernel_closed};
use crate::numerics::diff::{first_derivative, second_derivative};
use crate::numerics::{integrate_unit_interval, QuadratureSpec};

const FIRST_STEP: f64 = 1e-3;
const SECOND_STEP: f64 = 3e-3;
const KERNEL_RADIUS: f64 = 0.25;
const KERNEL_POINTS: usize = 32;
/// Sign conditions are judged against `-SIGN_TOL * scale`.
pub const SIGN_TOL: f64 = 1e-8;

/// Both differentiated identities together with the sign conditions on
/// their kernels and left-hand sides.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivativeIdentities {
    pub first: IdentityReport,
    pub second: IdentityReport,
    /// Smallest sampled `y d/dy f_t(y)` and `d^2/dy^2 f_t(y)`.
    pub min_first_kernel: f64,
    pub min_second_kernel: f64,
    pub kernel_scale: f64,
    /// `|K_{iz}(a)|^2`, the scale for the left-hand sign checks.
    pub value: f64,
    pub signs_hold: bool,
}

fn k_square(a: f64, x: f64, y: f64) -> Result<f64> {
    Ok(eval_k_nu(Complex64::new(-y, x), a)?.norm_sqr())
}

/// `y d/dy |K_{iz}(a)|^2` and `d^2/dy^2 |K_{iz}(a)|^2` by central differences
/// against `int_0^1 {y d/dy, d^2/dy^2} f_t(y) K_{ix}(a/sqrt t)^2 dt/t`.
pub fn verify_derivative_identities(a: f64, x: f64, y: f64) -> Result<DerivativeIdentities> {
    check_a(a)?;
    let spec = QuadratureSpec::default();
    let value = k_square(a, x, y)?;
    let lhs1 = y * first_derivative(|eta| k_square(a, x, eta), y, FIRST_STEP)?;
    let lhs2 = second_derivative(|eta| k_square(a, x, eta), y, SECOND_STEP)?;

    // The real part carries the first-derivative integrand and the
    // imaginary part the second, so both share the K evaluations.
    let mut slot = ErrorSlot::default();
    let mut min1 = f64::INFINITY;
    let mut min2 = f64::INFINITY;
    let mut scale = 0.0f64;
    let q = integrate_unit_interval(
        |t| {
            let k2 = slot.take(k_ix_squared(x, a / t.sqrt(), &spec));
            if k2 == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let (d1, d2) = slot.take(contour_derivatives(
                |w| f_kernel_closed(t, w),
                y,
                KERNEL_RADIUS,
                KERNEL_POINTS,
            ));
            let k1 = y * d1;
            min1 = min1.min(k1);
            min2 = min2.min(d2);
            scale = scale.max(k1.abs()).max(d2.abs());
            Complex64::new(k1, d2) * (k2 / t)
        },
        &spec,
    )?;
    slot.check()?;

    let inputs = |identity| Inputs {
        identity,
        a,
        c: None,
        x,
        y,
    };
    let first = IdentityReport::judge(
        inputs(Identity::FirstDerivative),
        real(lhs1),
        real(q.value.re),
        DERIVATIVE_TOL,
        value,
    );
    let second = IdentityReport::judge(
        inputs(Identity::SecondDerivative),
        real(lhs2),
        real(q.value.im),
        DERIVATIVE_TOL,
        value,
    );
    let floor = -SIGN_TOL * scale;
    let signs_hold = min1 >= floor
        && min2 >= floor
        && lhs1 >= -SIGN_TOL * value.max(lhs1.abs())
        && lhs2 >= -SIGN_TOL * value.max(lhs2.abs());
    Ok(DerivativeIdentities {
        first,
        second,
        min_first_kernel: min1,
        min_second_kernel: min2,
        kernel_scale: scale,
        value,
        signs_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::f_taylor;

    #[test]
    fn reference_point() {
        let d = verify_derivative_identities(1.0, 1.0, 0.7).unwrap();
        assert!(d.first.rel_residual <= 1e-6, "{:?}", d.first);
        assert!(d.second.rel_residual <= 1e-6, "{:?}", d.second);
        assert!(d.signs_hold);
    }

    #[test]
    fn first_identity_vanishes_on_axis() {
        let d = verify_derivative_identities(2.0, 3.0, 0.0).unwrap();
        assert!(d.first.lhs.abs() <= 1e-10 && d.first.rhs.abs() <= 1e-10);
        assert!(d.first.pass && d.second.pass);
    }

    #[test]
    fn curvature_at_origin_from_taylor_coefficient() {
        // d^2 f_t / dy^2 at 0 is twice the y^2 coefficient.
        // The series builder needs ~1/t terms, so below t = 0.05 the
        // coefficient comes from its closed form -ln t / (1 - t).
        let spec = QuadratureSpec::default();
        let c2 = |t: f64| {
            if (0.05..1.0).contains(&t) {
                f_taylor(t, 2).unwrap().coeff(2)
            } else if t < 1.0 {
                -t.ln() / (1.0 - t)
            } else {
                1.0
            }
        };
        let oracle = integrate_unit_interval(
            |t| 2.0 * c2(t) * k_ix_squared(0.0, 1.0 / t.sqrt(), &spec).unwrap() / t,
            &spec,
        )
        .unwrap()
        .value;
        let d = verify_derivative_identities(1.0, 0.0, 0.0).unwrap();
        assert!(d.second.lhs > 0.0);
        assert!((d.second.rhs - oracle).abs() <= 1e-8 * oracle);
    }
}
