//! Grid scans of kernel positivity, convexity, trichotomy and Taylor
//! coefficient signs.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    contour_coefficients, f_kernel, f_kernel_complex, f_taylor, g_kernel_complex, g_taylor,
    kernel_value, KernelKind, KernelPoint,
};
use crate::error::{Error, Result};
use crate::numerics::diff::second_difference;
use crate::numerics::series::TruncatedSeries;

/// Even coefficients of `f` below `-tol * max coefficient` contradict the
/// absolute monotonicity claim.
pub const COEFFICIENT_CLAIM_TOL: f64 = 1e-12;
/// Odd coefficients above `tol * max coefficient` contradict evenness.
pub const ODD_TOL: f64 = 1e-13;
/// A `g` coefficient below `-tol` is reported as a finding.
pub const CONJECTURE_TOL: f64 = 1e-10;
const G_VALUE_TOL: f64 = 1e-9;
const SECOND_DIFFERENCE_TOL: f64 = 1e-6;
const ORACLE_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelGrid {
    pub kind: KernelKind,
    pub t: Vec<f64>,
    pub c: Vec<f64>,
    pub y: Vec<f64>,
    pub order: usize,
    pub second_difference_step: f64,
}

impl KernelGrid {
    /// `t = 0.1..0.9`, `c in {1/4, 1/2, 1, 9/4}`, `y = -4..4` by `0.1`;
    /// order 40 for `f` and 30 for `g`.
    pub fn default_for(kind: KernelKind) -> Self {
        Self {
            kind,
            t: (1..=9).map(|i| i as f64 / 10.0).collect(),
            c: vec![0.25, 0.5, 1.0, 2.25],
            y: (-40..=40).map(|i| i as f64 / 10.0).collect(),
            order: match kind {
                KernelKind::F => 40,
                KernelKind::G => 30,
            },
            second_difference_step: 1e-3,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.t.is_empty() || self.y.is_empty() {
            return Err(Error::Parameter("kernel grid needs t and y values".into()));
        }
        if self.kind == KernelKind::G && self.c.is_empty() {
            return Err(Error::Parameter("g kernel grid needs c values".into()));
        }
        if let Some(t) = self.t.iter().find(|&&t| !(t > 0.0 && t < 1.0)) {
            return Err(Error::Domain(format!("kernel parameter t = {t} outside (0, 1)")));
        }
        Ok(())
    }

    /// The `c` values a kernel depends on (`f` has none).
    fn shifts(&self) -> Vec<Option<f64>> {
        match self.kind {
            KernelKind::F => vec![None],
            KernelKind::G => self.c.iter().map(|&c| Some(c)).collect(),
        }
    }
}

/// Smallest even-index coefficient (index >= 2) for one parameter pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientMinimum {
    pub k: usize,
    pub t: f64,
    pub c: Option<f64>,
    pub value: f64,
    /// Largest coefficient magnitude of the same series.
    pub max_coefficient: f64,
}

/// A series coefficient compared with the contour-integral oracle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub k: usize,
    pub t: f64,
    pub c: Option<f64>,
    pub series: f64,
    pub oracle: f64,
    pub rel_diff: f64,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanStatus {
    Clean,
    /// A proven property of `f` or `g` failed.
    ClaimFailure,
    /// Series and oracle disagree.
    NumericalFailure,
    /// Only the conjectured properties of `g` failed.
    Finding,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelPropertyReport {
    pub grid: KernelGrid,
    pub min_value: f64,
    pub min_location: KernelPoint,
    pub min_second_difference: f64,
    pub min_second_difference_location: KernelPoint,
    pub trichotomy_checked: usize,
    pub trichotomy_violations: usize,
    pub min_even_coefficient: CoefficientMinimum,
    pub minima_by_parameter: Vec<CoefficientMinimum>,
    pub odd_coefficient_max_abs: f64,
    /// Largest `|odd coefficient| / max coefficient` over the parameters.
    pub odd_coefficient_ratio: f64,
    pub oracle_checks: Vec<OracleCheck>,
    pub status: ScanStatus,
    pub notes: Vec<String>,
}

struct SeriesSummary {
    minimum: CoefficientMinimum,
    odd_max: f64,
    odd_ratio: f64,
}

fn summarize(series: &TruncatedSeries, t: f64, c: Option<f64>) -> SeriesSummary {
    let cs = series.coeffs();
    let max = cs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut minimum = CoefficientMinimum {
        k: 2,
        t,
        c,
        value: f64::INFINITY,
        max_coefficient: max,
    };
    let mut odd_max = 0.0f64;
    for (k, &v) in cs.iter().enumerate() {
        if k % 2 == 1 {
            odd_max = odd_max.max(v.abs());
        } else if k >= 2 && v < minimum.value {
            minimum.k = k;
            minimum.value = v;
        }
    }
    let odd_ratio = if max > 0.0 { odd_max / max } else { 0.0 };
    SeriesSummary {
        minimum,
        odd_max,
        odd_ratio,
    }
}

fn series_for(kind: KernelKind, t: f64, c: Option<f64>, order: usize) -> Result<TruncatedSeries> {
    match kind {
        KernelKind::F => f_taylor(t, order),
        KernelKind::G => g_taylor(t, c.unwrap_or(0.0), order),
    }
}

/// Re-reads one coefficient from the contour oracle.
pub(crate) fn oracle_check(kind: KernelKind, m: &CoefficientMinimum) -> Result<OracleCheck> {
    let t = m.t;
    let c = m.c.unwrap_or(0.0);
    let oracle = match kind {
        KernelKind::F => contour_coefficients(|y: Complex64| f_kernel_complex(t, y), m.k)?,
        KernelKind::G => contour_coefficients(|y: Complex64| g_kernel_complex(t, c, y), m.k)?,
    }
    .coeffs[m.k];
    let diff = (oracle - m.value).abs();
    // Identically vanishing series (c = 0) leave only round-off in the oracle.
    let scale = if m.value != 0.0 {
        m.value.abs()
    } else {
        m.max_coefficient
    };
    let rel_diff = if scale > 0.0 { diff / scale } else { diff };
    Ok(OracleCheck {
        k: m.k,
        t,
        c: m.c,
        series: m.value,
        oracle,
        rel_diff,
        pass: rel_diff <= ORACLE_TOL,
    })
}

struct PointScan {
    value: f64,
    second: f64,
}

fn scan_point(kind: KernelKind, p: KernelPoint, h: f64) -> Result<PointScan> {
    let value = kernel_value(kind, p)?;
    let second = second_difference(|y| kernel_value(kind, KernelPoint { y, ..p }), p.y, h)?;
    Ok(PointScan { value, second })
}

pub fn scan_kernel_properties(grid: &KernelGrid) -> Result<KernelPropertyReport> {
    grid.validate()?;
    let kind = grid.kind;
    let shifts = grid.shifts();

    // Pointwise values and second differences, ordered by (t, c, y).
    let points: Vec<KernelPoint> = grid
        .t
        .iter()
        .flat_map(|&t| {
            shifts.iter().flat_map(move |&c| {
                grid.y.iter().map(move |&y| KernelPoint {
                    t,
                    c: c.unwrap_or(0.0),
                    y,
                })
            })
        })
        .collect();
    let scanned: Vec<PointScan> = points
        .par_iter()
        .map(|&p| scan_point(kind, p, grid.second_difference_step))
        .collect::<Result<_>>()?;

    let mut min_value = f64::INFINITY;
    let mut min_location = points[0];
    let mut min_second = f64::INFINITY;
    let mut min_second_location = points[0];
    let mut value_scale = 0.0f64;
    for (p, s) in points.iter().zip(&scanned) {
        value_scale = value_scale.max(s.value.abs());
        if s.value < min_value {
            min_value = s.value;
            min_location = *p;
        }
        if s.second < min_second {
            min_second = s.second;
            min_second_location = *p;
        }
    }

    // Trichotomy: f_t(y + c) - f_t(y - c) > 0 for y, c > 0.
    let mut trichotomy_checked = 0;
    let mut trichotomy_violations = 0;
    if kind == KernelKind::F {
        let triples: Vec<(f64, f64, f64)> = grid
            .t
            .iter()
            .flat_map(|&t| {
                grid.c
                    .iter()
                    .filter(|&&c| c > 0.0)
                    .flat_map(move |&c| grid.y.iter().filter(|&&y| y > 0.0).map(move |&y| (t, c, y)))
            })
            .collect();
        let diffs: Vec<f64> = triples
            .par_iter()
            .map(|&(t, c, y)| Ok(f_kernel(t, y + c)? - f_kernel(t, y - c)?))
            .collect::<Result<_>>()?;
        trichotomy_checked = diffs.len();
        trichotomy_violations = diffs.iter().filter(|&&d| !(d > 0.0)).count();
    }

    // Taylor coefficients per (t, c).
    let params: Vec<(f64, Option<f64>)> = grid
        .t
        .iter()
        .flat_map(|&t| shifts.iter().map(move |&c| (t, c)))
        .collect();
    let summaries: Vec<SeriesSummary> = params
        .par_iter()
        .map(|&(t, c)| series_for(kind, t, c, grid.order).map(|s| summarize(&s, t, c)))
        .collect::<Result<_>>()?;
    let minima_by_parameter: Vec<CoefficientMinimum> =
        summaries.iter().map(|s| s.minimum).collect();
    let min_even_coefficient = *minima_by_parameter
        .iter()
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .expect("nonempty parameter grid");
    let odd_coefficient_max_abs = summaries.iter().fold(0.0f64, |m, s| m.max(s.odd_max));
    let odd_coefficient_ratio = summaries.iter().fold(0.0f64, |m, s| m.max(s.odd_ratio));

    // Every reported minimum is re-derived by the contour oracle.
    let oracle_checks: Vec<OracleCheck> = if grid.order >= 2 {
        minima_by_parameter
            .par_iter()
            .map(|m| oracle_check(kind, m))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };

    let mut notes = Vec::new();
    let mut claim_failed = false;
    let mut finding = false;
    let coefficient_negative = |m: &CoefficientMinimum| match kind {
        KernelKind::F => m.value < -COEFFICIENT_CLAIM_TOL * m.max_coefficient,
        KernelKind::G => m.value < -CONJECTURE_TOL,
    };
    for m in minima_by_parameter.iter().filter(|m| coefficient_negative(m)) {
        notes.push(format!(
            "negative Taylor coefficient {:e} at k = {}, t = {}, c = {:?}",
            m.value, m.k, m.t, m.c
        ));
        match kind {
            KernelKind::F => claim_failed = true,
            KernelKind::G => finding = true,
        }
    }
    if odd_coefficient_ratio > ODD_TOL {
        notes.push(format!(
            "odd coefficients reach {odd_coefficient_ratio:e} of the largest coefficient"
        ));
        claim_failed = true;
    }
    match kind {
        KernelKind::F => {
            if min_value < -1e-12 * value_scale {
                notes.push(format!("f negative: {min_value:e} at {min_location:?}"));
                claim_failed = true;
            }
            if min_second < -SECOND_DIFFERENCE_TOL {
                notes.push(format!(
                    "f second difference {min_second:e} at {min_second_location:?}"
                ));
                claim_failed = true;
            }
            if trichotomy_violations > 0 {
                notes.push(format!("{trichotomy_violations} trichotomy violations"));
                claim_failed = true;
            }
        }
        KernelKind::G => {
            if min_value < -G_VALUE_TOL {
                // Independent route: the kernel is even, so evaluate at -y.
                let p = min_location;
                let mirror = kernel_value(kind, KernelPoint { y: -p.y, ..p })?;
                notes.push(format!(
                    "g negative: {min_value:e} at {p:?}; mirror evaluation {mirror:e}"
                ));
                finding = true;
            }
            if min_second < -SECOND_DIFFERENCE_TOL {
                notes.push(format!(
                    "g second difference {min_second:e} at {min_second_location:?}"
                ));
                finding = true;
            }
        }
    }
    let oracle_failed = oracle_checks.iter().any(|o| !o.pass);
    if oracle_failed {
        notes.push("series and contour oracle disagree on a reported minimum".into());
    }
    let status = if claim_failed {
        ScanStatus::ClaimFailure
    } else if oracle_failed {
        ScanStatus::NumericalFailure
    } else if finding {
        ScanStatus::Finding
    } else {
        ScanStatus::Clean
    };

    Ok(KernelPropertyReport {
        grid: grid.clone(),
        min_value,
        min_location,
        min_second_difference: min_second,
        min_second_difference_location: min_second_location,
        trichotomy_checked,
        trichotomy_violations,
        min_even_coefficient,
        minima_by_parameter,
        odd_coefficient_max_abs,
        odd_coefficient_ratio,
        oracle_checks,
        status,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(kind: KernelKind, t: &[f64], c: &[f64], y: Vec<f64>, order: usize) -> KernelGrid {
        KernelGrid {
            kind,
            t: t.to_vec(),
            c: c.to_vec(),
            y,
            order,
            second_difference_step: 1e-3,
        }
    }

    fn y_grid() -> Vec<f64> {
        (-40..=40).map(|i| i as f64 / 10.0).collect()
    }

    #[test]
    fn f_scan_is_clean() {
        let g = grid(KernelKind::F, &[0.25, 0.5, 0.75], &[0.25, 1.0], y_grid(), 20);
        let r = scan_kernel_properties(&g).unwrap();
        assert!(r.min_value >= 0.0);
        assert!(r.min_second_difference >= -1e-6);
        assert_eq!(r.trichotomy_violations, 0);
        assert!(r.trichotomy_checked > 0);
        assert_eq!(r.status, ScanStatus::Clean, "{:?}", r.notes);
    }

    #[test]
    fn g_scan_minimum() {
        let g = grid(KernelKind::G, &[0.25, 0.5, 0.75], &[0.5, 1.0, 2.25], y_grid(), 16);
        let r = scan_kernel_properties(&g).unwrap();
        assert!(r.min_value >= -1e-9, "{:?}", r.notes);
        assert_eq!(r.status, ScanStatus::Clean, "{:?}", r.notes);
        assert!(r.oracle_checks.iter().all(|o| o.pass));
    }

    #[test]
    fn single_point_at_origin() {
        for kind in [KernelKind::F, KernelKind::G] {
            let g = grid(kind, &[0.5], &[1.0], vec![0.0], 4);
            let r = scan_kernel_properties(&g).unwrap();
            assert_eq!(r.min_value, 0.0);
        }
    }

    #[test]
    fn invalid_grid() {
        let g = grid(KernelKind::F, &[1.5], &[], vec![0.0], 4);
        assert!(matches!(scan_kernel_properties(&g), Err(Error::Domain(_))));
    }
}
