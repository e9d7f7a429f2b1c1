//! Truncated power series and exact polynomials in one variable `y`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::Serialize;

use super::dd::DoubleDouble;

/// Coefficient field for [`TruncatedSeries`].
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn exp(self) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
}

impl Scalar for DoubleDouble {
    fn from_f64(x: f64) -> Self {
        DoubleDouble::from_f64(x)
    }
    fn to_f64(self) -> f64 {
        DoubleDouble::to_f64(self)
    }
    fn exp(self) -> Self {
        DoubleDouble::exp(self)
    }
}

/// Power series `sum_k c_k y^k` with every term above `order` discarded.
///
/// All binary operations require equal orders; mixing orders is a logic
/// error and panics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruncatedSeries<T: Scalar = f64> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncatedSeries<T> {
    /// Pads with zeros or truncates `coeffs` to `order + 1` entries.
    pub fn new(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: T, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    /// `c0 + c1 y`
    pub fn linear(c0: T, c1: T, order: usize) -> Self {
        Self::new(vec![c0, c1], order)
    }

    /// `exp(rate * y)`
    pub fn exponential(rate: T, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = T::one();
        coeffs.push(term);
        for k in 1..=order {
            term = term * rate / T::from_f64(k as f64);
            coeffs.push(term);
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).copied().unwrap_or_else(T::zero)
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    /// Multiplies by `y^k`, dropping what falls past the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.coeffs.len();
        let mut coeffs = vec![T::zero(); n];
        if k < n {
            coeffs[k..].clone_from_slice(&self.coeffs[..n - k]);
        }
        Self { coeffs }
    }

    /// Multiplication by `c0 + c1 y` in place, cheaper than a full product.
    pub fn mul_linear_assign(&mut self, c0: T, c1: T) {
        for i in (0..self.coeffs.len()).rev() {
            let lower = if i > 0 { self.coeffs[i - 1] } else { T::zero() };
            self.coeffs[i] = self.coeffs[i] * c0 + lower * c1;
        }
    }

    /// `exp` of the series, by the recurrence `n b_n = sum_k k a_k b_{n-k}`.
    pub fn exp(&self) -> Self {
        let n = self.coeffs.len();
        let mut b = vec![T::zero(); n];
        b[0] = self.coeffs[0].exp();
        for m in 1..n {
            let mut acc = T::zero();
            for k in 1..=m {
                acc = acc + T::from_f64(k as f64) * self.coeffs[k] * b[m - k];
            }
            b[m] = acc / T::from_f64(m as f64);
        }
        Self { coeffs: b }
    }

    pub fn derivative(&self) -> Self {
        let order = self.order();
        let coeffs = (1..=order)
            .map(|k| self.coeffs[k] * T::from_f64(k as f64))
            .collect();
        Self::new(coeffs, order)
    }

    /// Horner evaluation in binary64.
    pub fn eval(&self, y: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * y + c.to_f64())
    }

    pub fn to_f64(&self) -> TruncatedSeries<f64> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.to_f64()).collect(),
        }
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(
            self.order(),
            other.order(),
            "truncated series of different orders"
        );
    }
}

impl<T: Scalar> Add for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn add(self, rhs: Self) -> TruncatedSeries<T> {
        self.check_order(rhs);
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn sub(self, rhs: Self) -> TruncatedSeries<T> {
        self.check_order(rhs);
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }
}

impl<T: Scalar> Mul for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn mul(self, rhs: Self) -> TruncatedSeries<T> {
        self.check_order(rhs);
        let n = self.coeffs.len();
        let mut coeffs = vec![T::zero(); n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == T::zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs[..n - i].iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + a * b;
            }
        }
        TruncatedSeries { coeffs }
    }
}

impl<T: Scalar> Add for TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn add(self, rhs: Self) -> TruncatedSeries<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn sub(self, rhs: Self) -> TruncatedSeries<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;
    fn mul(self, rhs: Self) -> TruncatedSeries<T> {
        &self * &rhs
    }
}

/// A polynomial in `y` with real coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1.0] }
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(0.0);
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, y: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * y + c)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

/// The rising factorial `(y+1)_k = (y+1)(y+2)...(y+k)` as a polynomial in `y`.
///
/// Coefficients are integers and stay exact in binary64 while they are
/// below `2^53` (through `k = 18`).
pub fn pochhammer_polynomial(k: usize) -> Polynomial {
    (1..=k).fold(Polynomial::one(), |p, j| {
        p.mul(&Polynomial::new(vec![j as f64, 1.0]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_small_cases() {
        assert_eq!(pochhammer_polynomial(0).coeffs(), &[1.0]);
        assert_eq!(pochhammer_polynomial(1).coeffs(), &[1.0, 1.0]);
        assert_eq!(pochhammer_polynomial(3).coeffs(), &[6.0, 11.0, 6.0, 1.0]);
    }

    #[test]
    fn pochhammer_matches_repeated_product() {
        // (y+1)_k evaluated at integer y equals (y+k)!/y!
        for k in 0..10usize {
            let p = pochhammer_polynomial(k);
            assert!(p.coeffs().iter().all(|&c| c >= 0.0));
            for y in 0..5u32 {
                let direct: f64 = (1..=k).map(|j| (y as usize + j) as f64).product();
                assert_eq!(p.eval(y as f64), direct);
            }
        }
    }

    #[test]
    fn exp_of_zero_is_one() {
        let e = TruncatedSeries::<f64>::zero(12).exp();
        assert_eq!(e, TruncatedSeries::one(12));
    }

    #[test]
    fn exp_of_linear_matches_exponential() {
        let a = TruncatedSeries::linear(0.0, -0.7, 15).exp();
        let b = TruncatedSeries::exponential(-0.7, 15);
        for k in 0..=15 {
            assert!((a.coeff(k) - b.coeff(k)).abs() < 1e-15);
        }
    }

    #[test]
    fn linear_multiply_matches_full_product() {
        let mut a = TruncatedSeries::new(vec![1.0, 2.0, -0.5, 3.0], 6);
        let b = &a * &TruncatedSeries::linear(0.25, -1.5, 6);
        a.mul_linear_assign(0.25, -1.5);
        assert_eq!(a, b);
    }

    #[test]
    fn shift_and_derivative() {
        let a = TruncatedSeries::new(vec![1.0, 2.0, 3.0], 4);
        assert_eq!(a.shift_up(2).coeffs(), &[0.0, 0.0, 1.0, 2.0, 3.0]);
        assert_eq!(a.derivative().coeffs(), &[2.0, 6.0, 0.0, 0.0, 0.0]);
    }
}
