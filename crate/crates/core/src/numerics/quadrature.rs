//! Quadrature on `[0, U]` for even integrands, on `[0, inf)` and on `(0, 1)`.
//!
//! Every integrand in this crate carries a factor like `e^{-a cosh u}`, so
//! the trapezoid rule converges geometrically once the step resolves the
//! oscillation. Integrands that are even in `u` use the plain trapezoid rule
//! on `[0, U]`; everything else goes through the exp-sinh substitution
//! `u = exp(pi/2 sinh tau)`, which turns endpoint behaviour at `u = 0` into
//! double-exponential decay as well.

use std::f64::consts::FRAC_PI_2;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_refinements: usize,
    /// Integrand magnitude below which tails are cut.
    pub truncation_guard: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-300,
            rel_tol: 1e-13,
            max_refinements: 14,
            truncation_guard: 1e-300,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) || self.max_refinements < 1 {
            return Err(Error::Parameter(format!(
                "quadrature spec needs abs_tol > 0, rel_tol > 0, max_refinements >= 1; got {self:?}"
            )));
        }
        Ok(())
    }
}

/// Real or complex integrand values.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature<T> {
    pub value: T,
    /// Difference between the last two refinement levels.
    pub error: f64,
    pub evaluations: usize,
}

/// Running trapezoid sum together with the sum of magnitudes, which bounds
/// the achievable accuracy when the integral cancels.
#[derive(Clone, Copy)]
struct Sum<T> {
    value: T,
    l1: f64,
}

impl<T: QuadValue> Sum<T> {
    fn new() -> Self {
        Self {
            value: T::zero(),
            l1: 0.0,
        }
    }

    fn push(&mut self, v: T, weight: f64) {
        self.value = self.value + v * weight;
        self.l1 += v.magnitude() * weight.abs();
    }
}

fn check_finite<T: QuadValue>(v: T, at: f64) -> Result<T> {
    if v.magnitude().is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("integrand is not finite at {at:e}")))
    }
}

fn converged<T: QuadValue>(spec: &QuadratureSpec, new: T, old: T, l1: f64) -> (bool, f64) {
    let diff = (new - old).magnitude();
    let floor = 64.0 * f64::EPSILON * l1;
    let tol = spec.abs_tol.max(spec.rel_tol * new.magnitude()).max(floor);
    (diff <= tol, diff)
}

/// `int_0^upper f(u) du` for `f` even in `u` and negligible at `upper`.
///
/// Starts from 16 panels and halves the step until two successive levels
/// agree.
pub fn integrate_even<T, F>(mut f: F, upper: f64, spec: &QuadratureSpec) -> Result<Quadrature<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    spec.validate()?;
    if !(upper > 0.0) {
        return Ok(Quadrature {
            value: T::zero(),
            error: 0.0,
            evaluations: 0,
        });
    }
    let mut n = 16usize;
    let mut h = upper / n as f64;
    // Sum of f over the nodes, with endpoint halves.
    let mut nodes = Sum::new();
    nodes.push(check_finite(f(0.0), 0.0)?, 0.5);
    nodes.push(check_finite(f(upper), upper)?, 0.5);
    for k in 1..n {
        let u = k as f64 * h;
        nodes.push(check_finite(f(u), u)?, 1.0);
    }
    let mut evaluations = n + 1;
    let mut prev = nodes.value * h;
    let mut diff = f64::INFINITY;
    for level in 1..=spec.max_refinements {
        h *= 0.5;
        for k in 0..n {
            let u = (2 * k + 1) as f64 * h;
            nodes.push(check_finite(f(u), u)?, 1.0);
        }
        evaluations += n;
        n *= 2;
        let cur = nodes.value * h;
        let (ok, d) = converged(spec, cur, prev, nodes.l1 * h);
        diff = d;
        if ok && level >= 2 {
            return Ok(Quadrature {
                value: cur,
                error: d,
                evaluations,
            });
        }
        prev = cur;
    }
    Err(Error::NonConvergence {
        context: "trapezoid rule",
        error: diff,
        refinements: spec.max_refinements,
    })
}

/// Largest `|tau|` with `exp(pi/2 sinh tau)` inside the binary64 range.
const TAU_LIMIT: f64 = 6.7;
const TAU_STEP: f64 = 0.5;

fn exp_sinh_node(tau: f64) -> (f64, f64) {
    let x = (FRAC_PI_2 * tau.sinh()).exp();
    (x, FRAC_PI_2 * tau.cosh() * x)
}

/// `int_0^inf f(u) du` by exp-sinh quadrature with step halving.
pub fn integrate_semi_infinite<T, F>(mut f: F, spec: &QuadratureSpec) -> Result<Quadrature<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    spec.validate()?;
    let mut eval = |tau: f64| -> Result<T> {
        let (x, w) = exp_sinh_node(tau);
        let v = check_finite(f(x), x)?;
        Ok(v * w)
    };

    // Level 0 also fixes the window [lo, hi] in tau.
    let mut sum = Sum::new();
    let centre = eval(0.0)?;
    sum.push(centre, 1.0);
    let mut peak = centre.magnitude();
    let mut evaluations = 1;
    let mut window = [0.0f64; 2];
    for (side, dir) in [1.0f64, -1.0].into_iter().enumerate() {
        let mut small = 0;
        let mut k = 1;
        loop {
            let tau = dir * k as f64 * TAU_STEP;
            if tau.abs() > TAU_LIMIT {
                break;
            }
            let v = eval(tau)?;
            evaluations += 1;
            sum.push(v, 1.0);
            window[side] = tau;
            peak = peak.max(v.magnitude());
            let cut = spec.truncation_guard.max(1e-20 * peak);
            if v.magnitude() <= cut {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
            k += 1;
        }
    }
    let (hi, lo) = (window[0], window[1]);

    let mut h = TAU_STEP;
    let mut prev = sum.value * h;
    let mut diff = f64::INFINITY;
    for level in 1..=spec.max_refinements {
        h *= 0.5;
        let mut tau = lo + h;
        while tau < hi {
            sum.push(eval(tau)?, 1.0);
            evaluations += 1;
            tau += 2.0 * h;
        }
        let cur = sum.value * h;
        let (ok, d) = converged(spec, cur, prev, sum.l1 * h);
        diff = d;
        if ok && level >= 2 {
            return Ok(Quadrature {
                value: cur,
                error: d,
                evaluations,
            });
        }
        prev = cur;
    }
    Err(Error::NonConvergence {
        context: "exp-sinh quadrature",
        error: diff,
        refinements: spec.max_refinements,
    })
}

/// Beyond this `s`, `t = e^{-s}` is below the smallest normal binary64.
const S_CAP: f64 = 700.0;

/// `int_0^1 f(t) dt` through `t = e^{-s}`.
///
/// Contributions from `t < e^{-700}` are dropped without evaluating `f`.
pub fn integrate_unit_interval<T, F>(mut f: F, spec: &QuadratureSpec) -> Result<Quadrature<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    integrate_semi_infinite(
        |s| {
            if s > S_CAP {
                return T::zero();
            }
            let t = (-s).exp();
            f(t) * t
        },
        spec,
    )
}
