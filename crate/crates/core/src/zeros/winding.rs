use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{scan_real_zeros, Rectangle};
use crate::error::{Error, Result};
use crate::functions::FunctionId;

/// A boundary sample with `|f|` below this fraction of the local scale is
/// treated as a zero on the boundary.
pub const BOUNDARY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindingSpec {
    /// Initial distance between boundary samples.
    pub spacing: f64,
    pub max_samples: usize,
    pub boundary_tol: f64,
    /// Arc length over which the local modulus scale is taken.
    pub scale_window: f64,
}

impl Default for WindingSpec {
    fn default() -> Self {
        Self {
            spacing: 0.1,
            max_samples: 1 << 20,
            boundary_tol: BOUNDARY_TOL,
            scale_window: 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindingCount {
    pub count: i64,
    /// Smallest `|f|` on the boundary samples.
    pub boundary_min_modulus: f64,
    /// Smallest `|f|` relative to the largest `|f|` within the scale window.
    pub boundary_min_relative: f64,
    pub samples: usize,
}

#[derive(Clone, Copy)]
struct Sample {
    arc: f64,
    z: Complex64,
    value: Complex64,
}

fn checked(z: Complex64, v: Complex64) -> Result<Complex64> {
    if !v.norm().is_finite() {
        return Err(Error::Domain(format!("non-finite value at {z}")));
    }
    if v == Complex64::new(0.0, 0.0) {
        return Err(Error::BoundaryZero {
            re: z.re,
            im: z.im,
            modulus: 0.0,
        });
    }
    Ok(v)
}

/// Zeros inside `rect`, counted with multiplicity by tracking the phase of
/// `f` around the boundary.
///
/// Boundary samples are added by bisection until every phase increment is
/// below `pi/2`; the sampled increments then sum to `2 pi` times the count.
pub fn count_zeros_with<F>(f: F, rect: &Rectangle, spec: &WindingSpec) -> Result<WindingCount>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    rect.validate()?;
    if !(spec.spacing > 0.0) {
        return Err(Error::Parameter(format!(
            "boundary spacing must be positive, got {}",
            spec.spacing
        )));
    }
    let c = |x, y| Complex64::new(x, y);
    let corners = [
        c(rect.x_lo, rect.y_lo),
        c(rect.x_hi, rect.y_lo),
        c(rect.x_hi, rect.y_hi),
        c(rect.x_lo, rect.y_hi),
    ];

    // Initial samples of all four edges, counterclockwise.
    let mut initial = Vec::new();
    let mut arc0 = 0.0;
    for i in 0..4 {
        let (from, to) = (corners[i], corners[(i + 1) % 4]);
        let len = (to - from).norm();
        let n = ((len / spec.spacing).ceil() as usize).max(4);
        for j in 0..n {
            let s = j as f64 / n as f64;
            initial.push((arc0 + s * len, from + (to - from) * s));
        }
        arc0 += len;
    }
    initial.push((arc0, corners[0]));
    if initial.len() > spec.max_samples {
        return Err(Error::PhaseResolution {
            limit: spec.max_samples,
        });
    }
    let values: Vec<Complex64> = initial
        .par_iter()
        .map(|&(_, z)| checked(z, f(z)?))
        .collect::<Result<_>>()?;

    let point = |arc: f64| -> Complex64 {
        let mut rest = arc;
        for i in 0..4 {
            let (from, to) = (corners[i], corners[(i + 1) % 4]);
            let len = (to - from).norm();
            if rest <= len || i == 3 {
                return from + (to - from) * (rest / len);
            }
            rest -= len;
        }
        unreachable!()
    };

    let mut samples: Vec<Sample> = Vec::with_capacity(initial.len());
    let mut phase = 0.0;
    let mut evaluations = initial.len();
    let first = Sample {
        arc: initial[0].0,
        z: initial[0].1,
        value: values[0],
    };
    samples.push(first);
    let mut cur = first;
    for k in 1..initial.len() {
        let mut stack = vec![Sample {
            arc: initial[k].0,
            z: initial[k].1,
            value: values[k],
        }];
        while let Some(&next) = stack.last() {
            let d = (next.value / cur.value).arg();
            if d.abs() < FRAC_PI_2 {
                phase += d;
                samples.push(next);
                cur = next;
                stack.pop();
                continue;
            }
            let mid = 0.5 * (cur.arc + next.arc);
            if evaluations >= spec.max_samples || mid <= cur.arc || mid >= next.arc {
                return Err(Error::PhaseResolution {
                    limit: spec.max_samples,
                });
            }
            let z = point(mid);
            let value = checked(z, f(z)?)?;
            evaluations += 1;
            stack.push(Sample {
                arc: mid,
                z,
                value,
            });
        }
    }

    // Local modulus scale over a sliding window of arc length.
    let half = 0.5 * spec.scale_window;
    let mods: Vec<f64> = samples.iter().map(|s| s.value.norm()).collect();
    let mut min_rel = f64::INFINITY;
    let mut min_rel_at = 0;
    let (mut lo, mut hi) = (0, 0);
    for i in 0..samples.len() {
        while samples[lo].arc < samples[i].arc - half {
            lo += 1;
        }
        while hi + 1 < samples.len() && samples[hi + 1].arc <= samples[i].arc + half {
            hi += 1;
        }
        let scale = mods[lo..=hi].iter().fold(0.0f64, |m, &v| m.max(v));
        let rel = mods[i] / scale;
        if rel < min_rel {
            min_rel = rel;
            min_rel_at = i;
        }
    }
    if min_rel < spec.boundary_tol {
        let s = samples[min_rel_at];
        return Err(Error::BoundaryZero {
            re: s.z.re,
            im: s.z.im,
            modulus: mods[min_rel_at],
        });
    }

    let turns = phase / (2.0 * PI);
    Ok(WindingCount {
        count: turns.round() as i64,
        boundary_min_modulus: mods.iter().fold(f64::INFINITY, |m, &v| m.min(v)),
        boundary_min_relative: min_rel,
        samples: samples.len(),
    })
}

pub fn count_zeros_rectangle(fid: &FunctionId, rect: &Rectangle) -> Result<WindingCount> {
    fid.validate()?;
    count_zeros_with(|z| fid.eval(z), rect, &WindingSpec::default())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RectCertificate {
    pub function: String,
    pub rect: Rectangle,
    pub winding_count: i64,
    /// The count again with the initial boundary spacing halved.
    pub winding_count_refined: i64,
    pub real_zeros_found: usize,
    pub zeros: Vec<f64>,
    pub suspects: Vec<f64>,
    pub boundary_min_modulus: f64,
    pub boundary_min_relative: f64,
    pub boundary_tol: f64,
    pub samples: usize,
    pub certified: bool,
}

/// Compares the zero count in a rectangle symmetric about the real axis
/// with the number of real zeros found on `[x_lo, x_hi]` at grid `step`.
pub fn certify_reality(
    fid: &FunctionId,
    rect: &Rectangle,
    step: f64,
    spec: &WindingSpec,
) -> Result<RectCertificate> {
    fid.validate()?;
    rect.validate()?;
    if !rect.is_symmetric() {
        return Err(Error::Parameter(format!(
            "certification needs a rectangle symmetric about the real axis, got y in [{}, {}]",
            rect.y_lo, rect.y_hi
        )));
    }
    let f = |z| fid.eval(z);
    let coarse = count_zeros_with(f, rect, spec)?;
    let fine_spec = WindingSpec {
        spacing: 0.5 * spec.spacing,
        ..*spec
    };
    let fine = count_zeros_with(f, rect, &fine_spec)?;
    let list = scan_real_zeros(fid, rect.x_lo, rect.x_hi, step)?;
    let inside: Vec<_> = list
        .zeros
        .iter()
        .filter(|z| z.location > rect.x_lo && z.location < rect.x_hi)
        .collect();
    let all_simple = inside.iter().all(|z| z.simple);
    let boundary_min_relative = coarse.boundary_min_relative.min(fine.boundary_min_relative);
    let certified = coarse.count == fine.count
        && coarse.count == inside.len() as i64
        && all_simple
        && list.suspects.is_empty()
        && boundary_min_relative > spec.boundary_tol;
    Ok(RectCertificate {
        function: fid.to_string(),
        rect: *rect,
        winding_count: coarse.count,
        winding_count_refined: fine.count,
        real_zeros_found: inside.len(),
        zeros: inside.iter().map(|z| z.location).collect(),
        suspects: list.suspects.clone(),
        boundary_min_modulus: coarse.boundary_min_modulus.min(fine.boundary_min_modulus),
        boundary_min_relative,
        boundary_tol: spec.boundary_tol,
        samples: coarse.samples + fine.samples,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Rectangle {
        Rectangle::new(x_lo, x_hi, y_lo, y_hi).unwrap()
    }

    #[test]
    fn polynomial_counts() {
        let spec = WindingSpec::default();
        let p = |z: Complex64| Ok((z - 1.0) * (z - 1.0) * (z + Complex64::new(0.0, 2.0)));
        assert_eq!(count_zeros_with(p, &rect(0.0, 2.0, -1.0, 1.0), &spec).unwrap().count, 2);
        assert_eq!(count_zeros_with(p, &rect(-3.0, 3.0, -3.0, 3.0), &spec).unwrap().count, 3);
        assert_eq!(count_zeros_with(p, &rect(2.0, 3.0, -1.0, 1.0), &spec).unwrap().count, 0);
    }

    #[test]
    fn zero_on_boundary() {
        let p = |z: Complex64| Ok(z - 1.0);
        let r = count_zeros_with(p, &rect(1.0, 2.0, -1.0, 1.0), &WindingSpec::default());
        assert!(matches!(r, Err(Error::BoundaryZero { .. })));
    }

    #[test]
    fn sample_cap() {
        let spec = WindingSpec {
            max_samples: 64,
            ..WindingSpec::default()
        };
        let r = count_zeros_with(|z: Complex64| Ok(z.powi(40) - 0.5), &rect(-1.0, 1.0, -1.0, 1.0), &spec);
        assert!(matches!(r, Err(Error::PhaseResolution { .. })));
    }

    #[test]
    fn control_is_not_certified() {
        let c = certify_reality(
            &FunctionId::ControlZ2p1,
            &rect(-2.0, 2.0, -2.0, 2.0),
            0.05,
            &WindingSpec::default(),
        )
        .unwrap();
        assert_eq!(c.winding_count, 2);
        assert_eq!(c.real_zeros_found, 0);
        assert!(!c.certified);
    }

    #[test]
    fn asymmetric_rectangle_rejected() {
        let r = certify_reality(
            &FunctionId::XiStar,
            &rect(0.0, 1.0, -1.0, 2.0),
            0.05,
            &WindingSpec::default(),
        );
        assert!(matches!(r, Err(Error::Parameter(_))));
    }
}
