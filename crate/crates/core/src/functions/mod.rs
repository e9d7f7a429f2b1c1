//! Evaluators for the entire functions under study, each a cosine transform.

mod riemann;
mod transform;

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use riemann::{eval_riemann_xi, eval_riemann_xi_with, phi, phi_asymptotic_ratio, PhiTruncation, MAX_IMAG};
pub use transform::{
    cosh_transform, eval_f, eval_f_with, eval_k_iz, eval_k_nu, eval_k_nu_with, eval_xi_general,
    eval_xi_star, eval_xi_star_star, CoshTerm, XiGeneralParams, MAX_ORDER_RE,
};

use crate::error::{Error, Result};

/// A function family together with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "fn", rename_all = "snake_case")]
pub enum FunctionId {
    /// `z -> K_{iz}(a)`
    KOrder { a: f64 },
    /// `z -> F_{a,c}(z)`
    F { a: f64, c: f64 },
    XiStar,
    XiStarStar,
    XiGeneral {
        #[serde(rename = "A")]
        big_a: f64,
        #[serde(rename = "B")]
        big_b: f64,
        a: f64,
        b: f64,
        c: f64,
    },
    RiemannXi,
    /// `z^2 + 1`, a control with the non-real zeros `+-i`.
    ControlZ2p1,
}

impl FunctionId {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FunctionId::KOrder { a } | FunctionId::F { a, .. } if !(a > 0.0) => Err(
                Error::Parameter(format!("{} needs a > 0, got a = {a}", self.name())),
            ),
            FunctionId::F { c, .. } if !c.is_finite() => {
                Err(Error::Parameter(format!("F needs finite c, got {c}")))
            }
            FunctionId::XiGeneral { .. } => self.xi_general_params().unwrap().validate(),
            _ => Ok(()),
        }
    }

    fn xi_general_params(&self) -> Option<XiGeneralParams> {
        match *self {
            FunctionId::XiGeneral {
                big_a,
                big_b,
                a,
                b,
                c,
            } => Some(XiGeneralParams {
                big_a,
                big_b,
                a,
                b,
                c,
            }),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FunctionId::KOrder { .. } => "k",
            FunctionId::F { .. } => "f",
            FunctionId::XiStar => "xistar",
            FunctionId::XiStarStar => "xistarstar",
            FunctionId::XiGeneral { .. } => "xigeneral",
            FunctionId::RiemannXi => "riemannxi",
            FunctionId::ControlZ2p1 => "control-z2p1",
        }
    }

    /// The built-in control, whose zeros are not real.
    pub fn is_control(&self) -> bool {
        matches!(self, FunctionId::ControlZ2p1)
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match *self {
            FunctionId::KOrder { a } => eval_k_iz(z, a),
            FunctionId::F { a, c } => eval_f(a, c, z),
            FunctionId::XiStar => eval_xi_star(z),
            FunctionId::XiStarStar => eval_xi_star_star(z),
            FunctionId::XiGeneral { .. } => eval_xi_general(&self.xi_general_params().unwrap(), z),
            FunctionId::RiemannXi => eval_riemann_xi(z, PhiTruncation::ADAPTIVE),
            FunctionId::ControlZ2p1 => Ok(z * z + 1.0),
        }
    }

    pub fn eval_real(&self, x: f64) -> Result<f64> {
        self.eval(Complex64::new(x, 0.0)).map(|v| v.re)
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FunctionId::KOrder { a } => write!(f, "K_iz({})", fmt_param(a)),
            FunctionId::F { a, c } => write!(f, "F_({},{})", fmt_param(a), fmt_param(c)),
            FunctionId::XiGeneral {
                big_a,
                big_b,
                a,
                b,
                c,
            } => write!(
                f,
                "Xi_({},{},{},{},{})",
                fmt_param(big_a),
                fmt_param(big_b),
                fmt_param(a),
                fmt_param(b),
                fmt_param(c)
            ),
            other => f.write_str(other.name()),
        }
    }
}

fn fmt_param(v: f64) -> String {
    if v == 2.0 * PI {
        "2pi".to_string()
    } else {
        format!("{v}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(FunctionId::KOrder { a: -1.0 }.validate().is_err());
        assert!(FunctionId::F { a: 1.0, c: -3.0 }.validate().is_ok());
        let bad = FunctionId::XiGeneral {
            big_a: 1.0,
            big_b: 2.0,
            a: 3.0,
            b: 1.0,
            c: 2.0,
        };
        assert!(matches!(bad.validate(), Err(Error::Parameter(_))));
    }

    #[test]
    fn display_uses_2pi() {
        assert_eq!(FunctionId::KOrder { a: 2.0 * PI }.to_string(), "K_iz(2pi)");
    }

    #[test]
    fn serde_round_trip() {
        let id = FunctionId::XiGeneral {
            big_a: 4.0,
            big_b: 1.0,
            a: 3.0,
            b: 1.0,
            c: 2.0,
        };
        let s = serde_json::to_string(&id).unwrap();
        assert!(s.contains("\"fn\":\"xi_general\""));
        assert_eq!(serde_json::from_str::<FunctionId>(&s).unwrap(), id);
    }

    #[test]
    fn schwarz_reflection_for_every_family() {
        let ids = [
            FunctionId::KOrder { a: 2.0 * PI },
            FunctionId::F { a: 1.0, c: 2.0 },
            FunctionId::XiStar,
            FunctionId::XiStarStar,
            FunctionId::XiGeneral {
                big_a: 4.0,
                big_b: 1.0,
                a: 3.0,
                b: 1.0,
                c: 2.0,
            },
            FunctionId::RiemannXi,
        ];
        for id in ids {
            for z in [Complex64::new(3.3, 1.2), Complex64::new(11.0, -0.7)] {
                let v = id.eval(z).unwrap();
                let w = id.eval(z.conj()).unwrap();
                assert!((v - w.conj()).norm() <= 1e-12 * v.norm(), "{id} at {z}");
                let e = id.eval(-z).unwrap();
                assert!((v - e).norm() <= 1e-12 * v.norm(), "{id} even at {z}");
            }
        }
    }
}
