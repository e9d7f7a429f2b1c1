use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::FunctionId;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealZero {
    pub location: f64,
    pub bracket_width: f64,
    /// The function changes sign across the refined zero.
    pub simple: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ZeroList {
    pub zeros: Vec<RealZero>,
    /// Grid points where `|f|` dips towards zero without a sign change:
    /// the parabola through three neighbouring samples has real roots
    /// between them, so a close pair or a double zero may have been missed.
    pub suspects: Vec<f64>,
}

impl ZeroList {
    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn locations(&self) -> Vec<f64> {
        self.zeros.iter().map(|z| z.location).collect()
    }
}

/// `lo, lo + step, ...` up to `hi`; the last point snaps to `hi` when within half a step.
pub fn grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Parameter(format!(
            "grid needs lo <= hi and step > 0, got {lo}:{hi}:{step}"
        )));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    // With lo and step short decimals, lo + k step is formed in scaled
    // integers so that 0.1:0.9:0.1 yields 0.3 rather than 0.30000000000000004.
    let decimal = (0..=9).map(|d| 10f64.powi(d)).find(|&m| {
        let whole = |v: f64| (v * m - (v * m).round()).abs() <= 1e-9 * (v * m).abs().max(1.0);
        whole(lo) && whole(step) && (lo.abs() + step * n as f64) * m < 9e15
    });
    let mut xs: Vec<f64> = match decimal {
        Some(m) => {
            let (l, s) = ((lo * m).round(), (step * m).round());
            (0..=n).map(|k| (l + k as f64 * s) / m).collect()
        }
        None => (0..=n).map(|k| lo + k as f64 * step).collect(),
    };
    if hi - xs[n] > 0.5 * step {
        xs.push(hi);
    } else {
        xs[n] = hi;
    }
    Ok(xs)
}

fn bisect<F: Fn(f64) -> Result<f64>>(f: &F, mut lo: f64, mut hi: f64, f_lo: f64) -> Result<(f64, f64)> {
    let mut s_lo = f_lo.signum();
    let width = |lo: f64, hi: f64| 1e-12 * lo.abs().max(hi.abs()).max(1.0);
    while hi - lo > width(lo, hi) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid)?;
        if v == 0.0 {
            return Ok((mid, 0.0));
        }
        if v.signum() == s_lo {
            lo = mid;
            s_lo = v.signum();
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), hi - lo))
}

fn parabola_has_roots(x: [f64; 3], y: [f64; 3]) -> bool {
    // Newton form through the three samples.
    let d1 = (y[1] - y[0]) / (x[1] - x[0]);
    let d2 = ((y[2] - y[1]) / (x[2] - x[1]) - d1) / (x[2] - x[0]);
    if d2 == 0.0 {
        return false;
    }
    // p(s) = y0 + d1 (s - x0) + d2 (s - x0)(s - x1)
    let a = d2;
    let b = d1 - d2 * (x[0] + x[1]);
    let c = y[0] - d1 * x[0] + d2 * x[0] * x[1];
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return false;
    }
    let r = disc.sqrt();
    [(-b - r) / (2.0 * a), (-b + r) / (2.0 * a)]
        .iter()
        .any(|&s| s >= x[0] && s <= x[2])
}

/// Sign changes of a real function on `lo:hi:step`, refined by bisection
/// to width `1e-12 max(1, |x|)`.
pub fn scan_real_zeros_with<F>(f: F, lo: f64, hi: f64, step: f64) -> Result<ZeroList>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let xs = grid(lo, hi, step)?;
    let vs: Vec<f64> = xs.par_iter().map(|&x| f(x)).collect::<Result<_>>()?;
    if let Some(i) = vs.iter().position(|v| !v.is_finite()) {
        return Err(Error::Domain(format!("non-finite value at x = {}", xs[i])));
    }

    let mut zeros = Vec::new();
    for i in 0..xs.len() {
        if vs[i] == 0.0 {
            let before = if i > 0 { vs[i - 1] } else { 0.0 };
            let after = if i + 1 < xs.len() { vs[i + 1] } else { 0.0 };
            zeros.push(RealZero {
                location: xs[i],
                bracket_width: 0.0,
                simple: before * after < 0.0,
            });
            continue;
        }
        if i + 1 < xs.len() && vs[i + 1] != 0.0 && vs[i].signum() != vs[i + 1].signum() {
            let (location, bracket_width) = bisect(&f, xs[i], xs[i + 1], vs[i])?;
            let delta = 1e-6 * location.abs().max(1.0);
            let simple = f(location - delta)? * f(location + delta)? < 0.0;
            zeros.push(RealZero {
                location,
                bracket_width,
                simple,
            });
        }
    }

    let mut suspects = Vec::new();
    for i in 1..xs.len().saturating_sub(1) {
        let (a, b, c) = (vs[i - 1], vs[i], vs[i + 1]);
        let same = a.signum() == b.signum() && b.signum() == c.signum() && b != 0.0;
        if same
            && b.abs() < a.abs()
            && b.abs() < c.abs()
            && parabola_has_roots([xs[i - 1], xs[i], xs[i + 1]], [a, b, c])
        {
            suspects.push(xs[i]);
        }
    }
    Ok(ZeroList { zeros, suspects })
}

pub fn scan_real_zeros(fid: &FunctionId, lo: f64, hi: f64, step: f64) -> Result<ZeroList> {
    fid.validate()?;
    scan_real_zeros_with(|x| fid.eval_real(x), lo, hi, step)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_includes_endpoints() {
        let g = grid(0.0, 1.0, 0.1).unwrap();
        assert_eq!(g.len(), 11);
        assert_eq!(g[10], 1.0);
        assert_eq!(grid(0.0, 1.0, 0.3).unwrap().len(), 4);
        assert!(grid(1.0, 0.0, 0.1).is_err());
        assert_eq!(grid(0.1, 0.9, 0.1).unwrap()[2], 0.3);
        assert_eq!(grid(-2.0, 2.0, 0.25).unwrap()[3], -1.25);
    }

    #[test]
    fn cosine_zeros() {
        let z = scan_real_zeros_with(|x: f64| Ok(x.cos()), 0.0, 10.0, 0.05).unwrap();
        let exact = [0.5, 1.5, 2.5].map(|k: f64| k * std::f64::consts::PI);
        assert_eq!(z.len(), 3);
        for (r, e) in z.zeros.iter().zip(exact) {
            assert!((r.location - e).abs() < 1e-11);
            assert!(r.simple);
        }
        assert!(z.suspects.is_empty());
    }

    #[test]
    fn double_zero_is_a_suspect() {
        let z = scan_real_zeros_with(|x: f64| Ok((x - 1.01).powi(2)), 0.0, 2.0, 0.05).unwrap();
        assert!(z.is_empty());
        assert_eq!(z.suspects.len(), 1);
    }

    #[test]
    fn grid_point_zero_counted_once() {
        let z = scan_real_zeros_with(|x: f64| Ok(x - 0.5), 0.0, 1.0, 0.25).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z.zeros[0].location, 0.5);
        assert!(z.zeros[0].simple);
    }
}
