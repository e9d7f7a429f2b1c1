//! Central finite differences used as independent derivative oracles.

use crate::error::Result;

/// Five-point central first difference at step `h`.
fn first_five_point<F: FnMut(f64) -> Result<f64>>(f: &mut F, x: f64, h: f64) -> Result<f64> {
    let (m2, m1, p1, p2) = (f(x - 2.0 * h)?, f(x - h)?, f(x + h)?, f(x + 2.0 * h)?);
    Ok((m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h))
}

/// First derivative: five-point differences at `h` and `h/2` combined by
/// one Richardson step.
pub fn first_derivative<F: FnMut(f64) -> Result<f64>>(mut f: F, x: f64, h: f64) -> Result<f64> {
    let coarse = first_five_point(&mut f, x, h)?;
    let fine = first_five_point(&mut f, x, 0.5 * h)?;
    Ok((16.0 * fine - coarse) / 15.0)
}

/// Second derivative by the five-point central formula.
pub fn second_derivative<F: FnMut(f64) -> Result<f64>>(mut f: F, x: f64, h: f64) -> Result<f64> {
    let (m2, m1, c, p1, p2) = (
        f(x - 2.0 * h)?,
        f(x - h)?,
        f(x)?,
        f(x + h)?,
        f(x + 2.0 * h)?,
    );
    Ok((-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h))
}

/// The symmetric second difference `[f(x-h) - 2f(x) + f(x+h)] / h^2`,
/// refined once by Richardson with `h/2`.
pub fn second_difference<F: FnMut(f64) -> Result<f64>>(mut f: F, x: f64, h: f64) -> Result<f64> {
    let c = f(x)?;
    let mut d = |h: f64| -> Result<f64> { Ok((f(x - h)? - 2.0 * c + f(x + h)?) / (h * h)) };
    let coarse = d(h)?;
    let fine = d(0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}
