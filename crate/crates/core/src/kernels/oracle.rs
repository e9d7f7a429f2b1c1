//! Taylor coefficients and derivatives from Cauchy's integral formula,
//! sampled by the trapezoid rule on circles in the complex `y`-plane.
//!
//! This is independent of the series builder: it only evaluates the kernel
//! at complex `y` through `2F1` with complex parameters.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;

const POINTS: usize = 128;

/// Coefficients with the radius each was read from.
#[derive(Clone, Debug, PartialEq)]
pub struct ContourCoefficients {
    pub coeffs: Vec<f64>,
    pub radii: Vec<f64>,
}

fn circle_samples<F>(f: &mut F, centre: f64, radius: f64, points: usize) -> Result<Vec<Complex64>>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    (0..points)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / points as f64;
            f(Complex64::new(centre, 0.0) + Complex64::from_polar(radius, theta))
        })
        .collect()
}

/// `n`-th coefficient from samples on a circle of radius `r`.
fn read_coefficient(samples: &[Complex64], n: usize, r: f64) -> f64 {
    let m = samples.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, &v) in samples.iter().enumerate() {
        let theta = 2.0 * PI * ((j * n) % m) as f64 / m as f64;
        acc += v * Complex64::from_polar(1.0, -theta);
    }
    acc.re / (m as f64 * r.powi(n as i32))
}

/// Taylor coefficients `0..=order` of `f` at `y = 0`.
///
/// Each coefficient is read from the circle among `0.5 * 1.5^i`, up to
/// radius 32, that minimises the round-off bound `max|f| / r^n`.
pub fn contour_coefficients<F>(mut f: F, order: usize) -> Result<ContourCoefficients>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let mut circles = Vec::new();
    let mut r = 0.5;
    while r <= 32.0 {
        let samples = circle_samples(&mut f, 0.0, r, POINTS)?;
        let peak = samples.iter().fold(0.0f64, |m, v| m.max(v.norm()));
        circles.push((r, peak, samples));
        r *= 1.5;
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut radii = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let (r, _, samples) = circles
            .iter()
            .min_by(|a, b| {
                let ea = a.1.ln() - n as f64 * a.0.ln();
                let eb = b.1.ln() - n as f64 * b.0.ln();
                ea.total_cmp(&eb)
            })
            .expect("at least one circle");
        coeffs.push(read_coefficient(samples, n, *r));
        radii.push(*r);
    }
    Ok(ContourCoefficients { coeffs, radii })
}

/// First and second derivatives of a real-on-the-axis function at real `y0`.
pub fn contour_derivatives<F>(mut f: F, y0: f64, radius: f64, points: usize) -> Result<(f64, f64)>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let samples = circle_samples(&mut f, y0, radius, points)?;
    let d1 = read_coefficient(&samples, 1, radius);
    let d2 = 2.0 * read_coefficient(&samples, 2, radius);
    Ok((d1, d2))
}
