//! Double-double arithmetic: an unevaluated sum `hi + lo` of two binary64
//! values carrying roughly 106 bits of significand.
//!
//! Only the handful of operations needed by the kernel series builder are
//! provided. The Taylor coefficients of the kernels come out of sums whose
//! terms are up to `2^n` times larger than the result, so the build runs in
//! this type and rounds back to `f64` at the end.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A double-double value `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

const LN2: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    pub const fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact product of two binary64 values.
    pub fn from_product(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Self { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    fn mul_pow2(self, k: i32) -> Self {
        let s = 2f64.powi(k);
        Self {
            hi: self.hi * s,
            lo: self.lo * s,
        }
    }

    pub fn square(self) -> Self {
        self * self
    }

    /// `e^x`, reduced by `x = k ln 2 + r` and `r / 2^10`, then a Taylor sum.
    pub fn exp(self) -> Self {
        if self.hi > 709.0 {
            return Self::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Self::ZERO;
        }
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2 * Self::from_f64(k)).mul_pow2(-10);

        let mut sum = Self::ZERO;
        let mut term = Self::ONE;
        for n in 1..=20 {
            term = term * r / Self::from_f64(n as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-34 {
                break;
            }
        }
        // exp(r) - 1 squared up: (1 + s)^2 - 1 = s (2 + s) keeps precision.
        for _ in 0..10 {
            sum = sum * (Self::from_f64(2.0) + sum);
        }
        (sum + Self::ONE).mul_pow2(k as i32)
    }

    /// Natural logarithm by one Newton step on `exp`.
    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return Self::from_f64(f64::NAN);
        }
        let x0 = Self::from_f64(self.hi.ln());
        x0 + self * (-x0).exp() - Self::ONE
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleDouble({:e} + {:e})", self.hi, self.lo)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Self::from_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Self::from_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + Self::from_f64(q3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_third_round_trips() {
        let third = DoubleDouble::ONE / DoubleDouble::from_f64(3.0);
        let back = third * DoubleDouble::from_f64(3.0) - DoubleDouble::ONE;
        assert!(back.to_f64().abs() < 1e-31);
    }

    #[test]
    fn exp_ln_inverse() {
        for &x in &[0.1, 0.5, 0.9, 2.0, 37.5] {
            let v = DoubleDouble::from_f64(x);
            let r = v.ln().exp() - v;
            assert!(r.to_f64().abs() < 1e-30 * x, "x = {x}: {r:?}");
        }
    }

    #[test]
    fn exp_matches_binary64() {
        for &x in &[-20.0, -1.0, 0.0, 0.3, 1.0, 12.5] {
            let e = DoubleDouble::from_f64(x).exp().to_f64();
            assert!((e - f64::exp(x)).abs() <= 2.0 * f64::EPSILON * f64::exp(x));
        }
    }

    #[test]
    fn ln2_constant() {
        let two = DoubleDouble::from_f64(2.0);
        let r = LN2.exp() - two;
        assert!(r.to_f64().abs() < 1e-31);
    }
}
