//! Numerical verification of the zero-reality results for entire functions
//! built from the modified Bessel function `K_{iz}(a)`, the Polya function
//! `Xi*(z)` and relatives.

// Parameter checks are written `!(v > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod functions;
pub mod identities;
pub mod kernels;
pub mod numerics;
pub mod zeros;

pub use error::{Error, Result};
