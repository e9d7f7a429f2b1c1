//! Cosine transforms `int_0^inf [sum_j c_j cosh(alpha_j u)] e^{-gamma cosh(beta u)} cos(zu) du`.
//!
//! Each product is expanded into exponentials `exp(-gamma cosh(beta u) +
//! (+-alpha_j +- i z) u)` so that large `cosh(alpha u)` never meets an
//! underflowed `e^{-gamma cosh(beta u)}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::quadrature::{integrate_even, QuadratureSpec};

/// One `c cosh(alpha u)` term of the transform's weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoshTerm {
    pub coef: f64,
    pub alpha: Complex64,
}

impl CoshTerm {
    pub fn new(coef: f64, alpha: f64) -> Self {
        Self {
            coef,
            alpha: Complex64::new(alpha, 0.0),
        }
    }
}

/// Largest order magnitude accepted by [`eval_k_nu`].
pub const MAX_ORDER_RE: f64 = 50.0;

/// Point past which `log_coef - gamma cosh(beta u) + lambda u` stays below
/// `ln guard`, or `None` when it never rises above it.
pub(crate) fn truncation_point(
    log_coef: f64,
    lambda: f64,
    gamma: f64,
    beta: f64,
    guard: f64,
) -> Option<f64> {
    let env = |u: f64| log_coef - gamma * (beta * u).cosh() + lambda * u;
    let target = guard.ln();
    let peak = (lambda / (gamma * beta)).asinh() / beta;
    if env(peak) < target {
        return None;
    }
    let mut lo = peak;
    let mut hi = peak + 1.0;
    while env(hi) >= target {
        lo = hi;
        hi = peak + 2.0 * (hi - peak);
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if env(mid) >= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(hi)
}

/// The transform described in the module docs, for complex `z`.
pub fn cosh_transform(
    terms: &[CoshTerm],
    gamma: f64,
    beta: f64,
    z: Complex64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    if !(gamma > 0.0) || !(beta > 0.0) {
        return Err(Error::Parameter(format!(
            "transform needs gamma > 0 and beta > 0, got {gamma}, {beta}"
        )));
    }
    let coef_sum: f64 = terms.iter().map(|t| t.coef.abs()).sum();
    if coef_sum == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let lambda = terms
        .iter()
        .map(|t| t.alpha.re.abs())
        .fold(0.0, f64::max)
        + z.im.abs();
    let Some(upper) = truncation_point(
        coef_sum.ln(),
        lambda,
        gamma,
        beta,
        spec.truncation_guard,
    ) else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    let iz = Complex64::i() * z;
    let integrand = |u: f64| {
        let base = -gamma * (beta * u).cosh();
        let mut acc = Complex64::new(0.0, 0.0);
        for t in terms {
            let e = |rate: Complex64| (rate * u + base).exp();
            // Paired so that z -> conj(z), z -> -z and alpha -> -alpha only
            // permute commutative additions: the symmetries hold exactly.
            let plus = e(t.alpha + iz) + e(t.alpha - iz);
            let minus = e(-t.alpha + iz) + e(-t.alpha - iz);
            acc += (plus + minus) * (0.25 * t.coef);
        }
        acc
    };
    Ok(integrate_even(integrand, upper, spec)?.value)
}

/// `K_nu(a) = int_0^inf e^{-a cosh u} cosh(nu u) du` for complex order.
pub fn eval_k_nu(nu: Complex64, a: f64) -> Result<Complex64> {
    eval_k_nu_with(nu, a, &QuadratureSpec::default())
}

pub fn eval_k_nu_with(nu: Complex64, a: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    if !(a > 0.0) {
        return Err(Error::Parameter(format!("K_nu(a) needs a > 0, got {a}")));
    }
    if nu.re.abs() > MAX_ORDER_RE {
        return Err(Error::Domain(format!(
            "|Re nu| = {} exceeds {MAX_ORDER_RE}",
            nu.re.abs()
        )));
    }
    let terms = [CoshTerm { coef: 1.0, alpha: nu }];
    let v = cosh_transform(&terms, a, 1.0, Complex64::new(0.0, 0.0), spec)?;
    // Real or purely imaginary orders give a real integrand.
    if nu.re == 0.0 || nu.im == 0.0 {
        return Ok(Complex64::new(v.re, 0.0));
    }
    Ok(v)
}

/// `K_{iz}(a)`.
pub fn eval_k_iz(z: Complex64, a: f64) -> Result<Complex64> {
    eval_k_nu(Complex64::i() * z, a)
}

/// `F_{a,c}(z) = 2 int_0^inf cosh(cu) e^{-a cosh u} cos(zu) du`.
pub fn eval_f(a: f64, c: f64, z: Complex64) -> Result<Complex64> {
    eval_f_with(a, c, z, &QuadratureSpec::default())
}

pub fn eval_f_with(a: f64, c: f64, z: Complex64, spec: &QuadratureSpec) -> Result<Complex64> {
    if !(a > 0.0) {
        return Err(Error::Parameter(format!("F_(a,c) needs a > 0, got {a}")));
    }
    real_on_axis(cosh_transform(&[CoshTerm::new(2.0, c)], a, 1.0, z, spec)?, z)
}

/// `Xi*(z) = 16 pi^2 int_0^inf cosh(9u/2) e^{-2 pi cosh 2u} cos(zu) du`.
pub fn eval_xi_star(z: Complex64) -> Result<Complex64> {
    let terms = [CoshTerm::new(16.0 * PI * PI, 4.5)];
    real_on_axis(
        cosh_transform(&terms, 2.0 * PI, 2.0, z, &QuadratureSpec::default())?,
        z,
    )
}

/// `Xi**(z) = 8 pi int_0^inf [2 pi cosh(9u/2) - 3 cosh(5u/2)] e^{-2 pi cosh 2u} cos(zu) du`.
pub fn eval_xi_star_star(z: Complex64) -> Result<Complex64> {
    let terms = [
        CoshTerm::new(16.0 * PI * PI, 4.5),
        CoshTerm::new(-24.0 * PI, 2.5),
    ];
    real_on_axis(
        cosh_transform(&terms, 2.0 * PI, 2.0, z, &QuadratureSpec::default())?,
        z,
    )
}

/// Parameters of `Xi_{A,B,a,b,c}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XiGeneralParams {
    pub big_a: f64,
    pub big_b: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl XiGeneralParams {
    pub fn validate(&self) -> Result<()> {
        let p = self;
        if p.big_a > p.big_b && p.big_b > 0.0 && p.a > p.b && p.b > 0.0 && p.c > 0.0 {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "Xi_(A,B,a,b,c) needs A > B > 0, a > b > 0, c > 0; got A={}, B={}, a={}, b={}, c={}",
                p.big_a, p.big_b, p.a, p.b, p.c
            )))
        }
    }
}

/// `Xi_{A,B,a,b,c}(z) = int_0^inf [A cosh(au) - B cosh(bu)] e^{-c cosh u} cos(zu) du`.
pub fn eval_xi_general(p: &XiGeneralParams, z: Complex64) -> Result<Complex64> {
    p.validate()?;
    let terms = [CoshTerm::new(p.big_a, p.a), CoshTerm::new(-p.big_b, p.b)];
    real_on_axis(
        cosh_transform(&terms, p.c, 1.0, z, &QuadratureSpec::default())?,
        z,
    )
}

/// Real entire functions are real on the real axis; drop the round-off there.
pub(crate) fn real_on_axis(v: Complex64, z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 {
        Ok(Complex64::new(v.re, 0.0))
    } else {
        Ok(v)
    }
}
