//! Two-sided numerical checks of the square-integral identities for
//! `|K_{iz}(a)|^2` and `|F_{a,c}(z)|^2`.
//!
//! Each check evaluates both sides by different routes: the left side by
//! direct complex quadrature of the defining cosine transform, the right side
//! through integrals over `t in (0, 1)` of the kernels against real-axis
//! values at the scaled argument `a / sqrt(t)`.

mod derivatives;
mod f_square;
mod k_square;
mod mellin;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use derivatives::{verify_derivative_identities, DerivativeIdentities};
pub use f_square::{verify_f_square_decomposition, verify_f_square_expansion};
pub use k_square::{eval_l, verify_k_square_decomposition, verify_xi_star_k};
pub use mellin::{verify_mellin_barnes, MellinBarnesSpec};

use crate::error::{Error, Result};

pub const K_SQUARE_TOL: f64 = 1e-8;
pub const XI_STAR_TOL: f64 = 1e-9;
pub const MELLIN_TOL: f64 = 1e-6;
pub const F_EXPANSION_TOL: f64 = 1e-8;
pub const F_DECOMPOSITION_TOL: f64 = 1e-6;
pub const DERIVATIVE_TOL: f64 = 1e-6;

/// Beyond this argument `K` underflows and the integrand is dropped.
pub(crate) const ARGUMENT_CAP: f64 = 745.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Identity {
    /// `|K_{iz}(a)|^2 = K_{ix}(a)^2 + y^2 int t^{y-1} 2F1 K_{ix}(a/sqrt t)^2 dt`.
    #[serde(rename = "kp")]
    KSquare,
    /// `Xi*(z) = 4 pi^2 [K_{iz/2 - 9/4}(2 pi) + K_{iz/2 + 9/4}(2 pi)]`.
    #[serde(rename = "xistar")]
    XiStarK,
    #[serde(rename = "mellin")]
    MellinBarnes,
    #[serde(rename = "f2")]
    FSquareExpansion,
    #[serde(rename = "f3")]
    FSquareDecomposition,
    #[serde(rename = "deriv1")]
    FirstDerivative,
    #[serde(rename = "deriv2")]
    SecondDerivative,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::KSquare => "kp",
            Identity::XiStarK => "xistar",
            Identity::MellinBarnes => "mellin",
            Identity::FSquareExpansion => "f2",
            Identity::FSquareDecomposition => "f3",
            Identity::FirstDerivative => "deriv1",
            Identity::SecondDerivative => "deriv2",
        }
    }
}

impl std::fmt::Display for Identity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub a: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    pub x: f64,
    pub y: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// Imaginary parts, reported only where a side is genuinely complex.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs_im: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_im: Option<f64>,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Inputs shared by every report.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Inputs {
    pub identity: Identity,
    pub a: f64,
    pub c: Option<f64>,
    pub x: f64,
    pub y: f64,
}

impl IdentityReport {
    /// Compares the two sides. The check passes when the residual is below
    /// `tol` times the larger side, or times `abs_scale` when both sides are
    /// small compared with it.
    pub(crate) fn judge(
        inputs: Inputs,
        lhs: Complex64,
        rhs: Complex64,
        tol: f64,
        abs_scale: f64,
    ) -> Self {
        let abs_residual = (lhs - rhs).norm();
        let big = lhs.norm().max(rhs.norm());
        let rel_residual = abs_residual / big.max(1e-300);
        let pass = abs_residual <= tol * big.max(abs_scale);
        let im = |v: Complex64| (v.im != 0.0).then_some(v.im);
        Self {
            identity: inputs.identity,
            a: inputs.a,
            c: inputs.c,
            x: inputs.x,
            y: inputs.y,
            lhs: lhs.re,
            rhs: rhs.re,
            lhs_im: im(lhs),
            rhs_im: im(rhs),
            abs_residual,
            rel_residual,
            tol,
            pass,
        }
    }
}

pub(crate) fn check_a(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("identities need a > 0, got {a}")))
    }
}

pub(crate) fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Captures the first error raised inside a quadrature closure, which has
/// to return a plain value.
#[derive(Default)]
pub(crate) struct ErrorSlot(Option<Error>);

impl ErrorSlot {
    pub fn take<T: Default>(&mut self, r: Result<T>) -> T {
        match r {
            Ok(v) => v,
            Err(e) => {
                self.0.get_or_insert(e);
                T::default()
            }
        }
    }

    pub fn check(self) -> Result<()> {
        match self.0 {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }
}
