use num_complex::Complex64;
use proptest::prelude::*;

use realzeros_core::numerics::{
    complex_gamma, gamma, hyp2f1_complement, integrate_unit_interval, QuadratureSpec, TruncatedSeries,
};

fn series(coeffs: Vec<f64>) -> TruncatedSeries {
    let order = coeffs.len() - 1;
    TruncatedSeries::new(coeffs, order)
}

/// Leading terms of the expansion about w = 1,
/// `A (1 + ab t / (1 - sigma)) + B t^sigma` with `sigma = c - a - b`, `t = 1 - w`,
/// `A = G(c) G(sigma) / (G(c-a) G(c-b))` and `B = G(c) G(-sigma) / (G(a) G(b))`.
/// At integer `sigma` the `B` term becomes logarithmic and of order `t^sigma ln t`.
fn connection_oracle(a: f64, b: f64, c: f64, t: f64) -> f64 {
    let sigma = c - a - b;
    let big_a = gamma(c).unwrap() * gamma(sigma).unwrap() / (gamma(c - a).unwrap() * gamma(c - b).unwrap());
    let mut v = big_a * (1.0 + a * b * t / (1.0 - sigma));
    if (sigma - sigma.round()).abs() > 1e-9 {
        v += gamma(c).unwrap() * gamma(-sigma).unwrap() / (gamma(a).unwrap() * gamma(b).unwrap()) * t.powf(sigma);
    }
    v
}

#[test]
fn gauss_summation_and_connection_near_one() {
    for y in [0.5, 1.3] {
        for s in [-2.0, -3.5] {
            let c = y - s;
            let exact = gamma(y - s).unwrap() * gamma(-y - s).unwrap() / gamma(-s).unwrap().powi(2);
            let at = hyp2f1_complement(y, y, c, 0.0).unwrap();
            assert!((at - exact).abs() <= 1e-12 * exact.abs());
            let t = 1e-7;
            let near = hyp2f1_complement(y, y, c, t).unwrap();
            let oracle = connection_oracle(y, y, c, t);
            assert!((near - oracle).abs() <= 1e-9 * exact.abs(), "y={y} s={s}: {near} vs {oracle}");
        }
    }
}

#[test]
fn beta_integrals_on_the_stated_grid() {
    let spec = QuadratureSpec::default();
    for k in [1, 2, 5] {
        for p in [0.5, 3.0] {
            let q = integrate_unit_interval(|t: f64| t.powf(p - 1.0) * (1.0 - t).powi(k - 1), &spec).unwrap();
            let exact = gamma(k as f64).unwrap() * gamma(p).unwrap() / gamma(p + k as f64).unwrap();
            assert!((q.value - exact).abs() <= 1e-8 * exact, "k={k} p={p}");
        }
    }
}

proptest! {
    #[test]
    fn gamma_recurrence(re in -6.0f64..6.0, im in -20.0f64..20.0) {
        prop_assume!(im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3);
        let s = Complex64::new(re, im);
        let g1 = complex_gamma(s + 1.0).unwrap();
        let g = complex_gamma(s).unwrap();
        prop_assert!((g1 - s * g).norm() <= 1e-12 * g1.norm());
    }

    #[test]
    fn beta_integral_any_exponent(p in 0.3f64..4.0, k in 1i32..6) {
        let q = integrate_unit_interval(
            |t: f64| t.powf(p - 1.0) * (1.0 - t).powi(k - 1),
            &QuadratureSpec::default(),
        )
        .unwrap();
        let exact = gamma(k as f64).unwrap() * gamma(p).unwrap() / gamma(p + k as f64).unwrap();
        prop_assert!((q.value - exact).abs() <= 1e-8 * exact);
    }

    #[test]
    fn series_multiplication_associates(
        a in prop::collection::vec(-2.0f64..2.0, 9),
        b in prop::collection::vec(-2.0f64..2.0, 9),
        c in prop::collection::vec(-2.0f64..2.0, 9),
    ) {
        let (a, b, c) = (series(a), series(b), series(c));
        let left = &(&a * &b) * &c;
        let right = &a * &(&b * &c);
        for (l, r) in left.coeffs().iter().zip(right.coeffs()) {
            prop_assert!((l - r).abs() <= 1e-12 * (1.0 + l.abs()));
        }
    }

    #[test]
    fn series_product_commutes_and_distributes(
        a in prop::collection::vec(-2.0f64..2.0, 7),
        b in prop::collection::vec(-2.0f64..2.0, 7),
        c in prop::collection::vec(-2.0f64..2.0, 7),
    ) {
        let (a, b, c) = (series(a), series(b), series(c));
        let ab = &a * &b;
        let ba = &b * &a;
        for (l, r) in ab.coeffs().iter().zip(ba.coeffs()) {
            prop_assert!((l - r).abs() <= 1e-13 * (1.0 + l.abs()));
        }
        let lhs = &a * &(&b + &c);
        let rhs = &ab + &(&a * &c);
        for (l, r) in lhs.coeffs().iter().zip(rhs.coeffs()) {
            prop_assert!((l - r).abs() <= 1e-12 * (1.0 + l.abs()));
        }
    }
}

#[test]
fn exp_of_zero_series() {
    let e = TruncatedSeries::<f64>::zero(12).exp();
    assert_eq!(e.coeff(0), 1.0);
    assert!(e.coeffs()[1..].iter().all(|&v| v == 0.0));
}
