//! Taylor coefficients of the kernels at `y = 0`.
//!
//! Each kernel is a combination of `P_s(y) t^s e^{y ln t} S_s(y)` with
//!
//! ```text
//! S_s(y) = sum_k Q_k(y) R_k(y) (1-t)^k / (k+1),
//! Q_k(y) = (y+1)_k / k!,    R_k(y) = (y+2s+1)_k / k!,
//! ```
//!
//! where `Q_k` and `R_k` are built one linear factor `1 + (y + 2s)/j` at a
//! time. The sums run in double-double arithmetic: the `e^{y ln t}` factor
//! alternates in sign and the three `g` terms nearly cancel, so binary64
//! loses about one bit per order.

use crate::error::{Error, Result};
use crate::numerics::dd::DoubleDouble as Dd;
use crate::numerics::series::TruncatedSeries;

use super::check_t;

pub const MAX_ORDER: usize = 60;

/// Terms of the `k`-sum are dropped once every coefficient's next term is
/// below this fraction of its accumulated magnitude, three times running.
const K_SUM_REL: f64 = 1e-20;
const K_CAP: usize = 20_000;

/// One `P(y) t^s S_s(y)` contribution; `P(y) = p1 y + p2 y^2`.
struct Shift {
    s: f64,
    p1: f64,
    p2: f64,
}

fn build(t: f64, shifts: &[Shift], order: usize) -> Result<TruncatedSeries> {
    check_t(t)?;
    if order > MAX_ORDER {
        return Err(Error::Order {
            requested: order,
            cap: MAX_ORDER,
        });
    }
    let n = order + 1;
    let tt = Dd::from_f64(t);
    let w = Dd::ONE - tt;
    let ln_t = tt.ln();

    let mut q = vec![Dd::ZERO; n];
    q[0] = Dd::ONE;
    let mut r: Vec<Vec<Dd>> = shifts.iter().map(|_| q.clone()).collect();
    let mut sums: Vec<Vec<Dd>> = shifts.iter().map(|_| vec![Dd::ZERO; n]).collect();
    let mut mags: Vec<Vec<f64>> = shifts.iter().map(|_| vec![0.0; n]).collect();

    let mut wk = Dd::ONE;
    let mut quiet = 0;
    let mut k = 0;
    loop {
        // Accumulate Q_k R_k w^k / (k+1).
        let scale = wk / Dd::from_f64((k + 1) as f64);
        let mut all_small = true;
        for (i, ri) in r.iter().enumerate() {
            for m in 0..n {
                let mut acc = Dd::ZERO;
                for j in 0..=m {
                    acc = acc + q[j] * ri[m - j];
                }
                let term = acc * scale;
                sums[i][m] = sums[i][m] + term;
                let tm = term.to_f64().abs();
                mags[i][m] += tm;
                if tm > K_SUM_REL * mags[i][m] {
                    all_small = false;
                }
            }
        }
        quiet = if all_small && k > order + 2 { quiet + 1 } else { 0 };
        if quiet >= 3 {
            break;
        }
        k += 1;
        if k > K_CAP {
            return Err(Error::NonConvergence {
                context: "kernel Taylor k-sum",
                error: 0.0,
                refinements: K_CAP,
            });
        }
        // Q_k = Q_{k-1} (1 + y/k), R_k = R_{k-1} (1 + 2s/k + y/k)
        let kf = Dd::from_f64(k as f64);
        mul_linear(&mut q, Dd::ONE, Dd::ONE / kf);
        for (ri, sh) in r.iter_mut().zip(shifts) {
            let c0 = Dd::ONE + Dd::from_f64(2.0 * sh.s) / kf;
            mul_linear(ri, c0, Dd::ONE / kf);
        }
        wk = wk * w;
    }

    // sum_s t^s P_s(y) S_s(y)
    let mut combined = vec![Dd::ZERO; n];
    for (sh, sum) in shifts.iter().zip(&sums) {
        let ts = (Dd::from_f64(sh.s) * ln_t).exp();
        for m in 1..n {
            let mut v = Dd::from_f64(sh.p1) * sum[m - 1];
            if m >= 2 {
                v = v + Dd::from_f64(sh.p2) * sum[m - 2];
            }
            combined[m] = combined[m] + ts * v;
        }
    }
    let combined = TruncatedSeries::new(combined, order);
    let e = TruncatedSeries::exponential(ln_t, order);
    Ok((&combined * &e).to_f64())
}

fn mul_linear(p: &mut [Dd], c0: Dd, c1: Dd) {
    for i in (0..p.len()).rev() {
        let lower = if i > 0 { p[i - 1] } else { Dd::ZERO };
        p[i] = p[i] * c0 + lower * c1;
    }
}

/// Taylor series of `f_t(y)` at `y = 0` through `y^order`.
pub fn f_taylor(t: f64, order: usize) -> Result<TruncatedSeries> {
    build(
        t,
        &[Shift {
            s: 0.0,
            p1: 0.0,
            p2: 1.0,
        }],
        order,
    )
}

/// Taylor series of `g_{t,c}(y)` at `y = 0` through `y^order`.
pub fn g_taylor(t: f64, c: f64, order: usize) -> Result<TruncatedSeries> {
    build(
        t,
        &[
            Shift {
                s: c,
                p1: 2.0 * c,
                p2: 1.0,
            },
            Shift {
                s: -c,
                p1: -2.0 * c,
                p2: 1.0,
            },
            Shift {
                s: 0.0,
                p1: 0.0,
                p2: -2.0,
            },
        ],
        order,
    )
}
