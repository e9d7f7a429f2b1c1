//! Numerical building blocks: quadrature, Gamma, `2F1`, series arithmetic.

pub mod dd;
pub mod diff;
pub mod gamma;
pub mod hypergeometric;
pub mod quadrature;
pub mod series;

pub use dd::DoubleDouble;
pub use gamma::{complex_gamma, complex_ln_gamma, gamma, rgamma};
pub use hypergeometric::{hyp2f1, hyp2f1_complement, hyp2f1_complex, hyp2f1_complex_complement};
pub use quadrature::{
    integrate_even, integrate_semi_infinite, integrate_unit_interval, Quadrature, QuadratureSpec,
};
pub use series::{pochhammer_polynomial, Polynomial, Scalar, TruncatedSeries};

/// The crate works with `num_complex` values directly.
pub type ComplexValue = num_complex::Complex64;
