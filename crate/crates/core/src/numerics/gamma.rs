//! Complex Gamma function by the Lanczos approximation (g = 7, 9 terms).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// 0.5 * ln(2 pi)
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_7;

fn is_pole(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

/// `ln Gamma(s)` for `Re s >= 1/2`.
fn ln_gamma_right(s: Complex64) -> Complex64 {
    let s = s - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (s + i as f64);
    }
    let t = s + LANCZOS_G + 0.5;
    HALF_LN_2PI + (s + 0.5) * t.ln() - t + x.ln()
}

/// A logarithm of `sin(pi s)` that stays finite for large `|Im s|`.
fn ln_sin_pi(s: Complex64) -> Complex64 {
    if s.im.abs() < 20.0 {
        return (s * PI).sin().ln();
    }
    if s.im < 0.0 {
        return ln_sin_pi(s.conj()).conj();
    }
    // sin(pi s) = e^{-i pi s} (e^{2 i pi s} - 1) / (2i), with |e^{2 i pi s}| tiny.
    let i = Complex64::i();
    let e = (2.0 * PI * i * s).exp();
    -i * PI * s + (e - 1.0).ln() - (2.0 * i).ln()
}

/// A logarithm of `Gamma(s)`. The imaginary part is correct modulo `2 pi`,
/// which is all that exponentiation needs.
pub fn complex_ln_gamma(s: Complex64) -> Result<Complex64> {
    if is_pole(s) {
        return Err(Error::Pole(s.re));
    }
    if s.re >= 0.5 {
        Ok(ln_gamma_right(s))
    } else {
        Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(s) - ln_gamma_right(1.0 - s))
    }
}

pub fn complex_gamma(s: Complex64) -> Result<Complex64> {
    if s.im == 0.0 {
        return gamma(s.re).map(|g| Complex64::new(g, 0.0));
    }
    Ok(complex_ln_gamma(s)?.exp())
}

/// `1 / Gamma(s)`, zero at the poles.
pub fn complex_rgamma(s: Complex64) -> Complex64 {
    match complex_gamma(s) {
        Ok(g) => 1.0 / g,
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// Real Gamma with the sign carried through the reflection formula.
pub fn gamma(x: f64) -> Result<f64> {
    if is_pole(Complex64::new(x, 0.0)) {
        return Err(Error::Pole(x));
    }
    if x >= 0.5 {
        Ok(ln_gamma_right(Complex64::new(x, 0.0)).re.exp())
    } else {
        Ok(PI / ((PI * x).sin() * gamma(1.0 - x)?))
    }
}

/// `1 / Gamma(x)`, zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    gamma(x).map_or(0.0, |g| 1.0 / g)
}
