//! Real zeros on a grid, zero counts in rectangles by the argument principle,
//! reality certificates and Jensen-criterion scans.

mod jensen;
mod real;
mod winding;

use serde::{Deserialize, Serialize};

pub use jensen::{jensen_scan, jensen_scan_with, JensenReport, JENSEN_TOL};
pub use real::{grid, scan_real_zeros, scan_real_zeros_with, RealZero, ZeroList};
pub use winding::{
    certify_reality, count_zeros_rectangle, count_zeros_with, RectCertificate, WindingCount,
    WindingSpec, BOUNDARY_TOL,
};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl Rectangle {
    pub fn new(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Result<Self> {
        let r = Self {
            x_lo,
            x_hi,
            y_lo,
            y_hi,
        };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_lo, self.x_hi, self.y_lo, self.y_hi]
            .iter()
            .all(|v| v.is_finite());
        if finite && self.x_lo < self.x_hi && self.y_lo < self.y_hi {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "rectangle needs x_lo < x_hi and y_lo < y_hi, got {self:?}"
            )))
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.y_lo == -self.y_hi
    }

    /// Reflection across the real axis.
    pub fn conjugate(&self) -> Self {
        Self {
            y_lo: -self.y_hi,
            y_hi: -self.y_lo,
            ..*self
        }
    }
}
