use thiserror::Error;

/// Failures raised by the numerical layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no convergence in {context}: estimated error {error:e} after {refinements} refinements")]
    NonConvergence {
        context: &'static str,
        error: f64,
        refinements: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole of the gamma function at {0}")]
    Pole(f64),

    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("series order {requested} exceeds the cap {cap}")]
    Order { requested: usize, cap: usize },

    #[error("contour abscissa {c_line} must lie left of -|y| = {bound}")]
    Contour { c_line: f64, bound: f64 },

    #[error("integrand sampled negative ({value:e}) at t = {t}")]
    IntegrandNegative { t: f64, value: f64 },

    #[error("function vanishes on the rectangle boundary near {re} + {im}i (|f| = {modulus:e})")]
    BoundaryZero { re: f64, im: f64, modulus: f64 },

    #[error("phase tracking needed more than {limit} boundary samples")]
    PhaseResolution { limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
