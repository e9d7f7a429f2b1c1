use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use realzeros_core::functions::eval_k_iz;
use realzeros_core::identities::{
    verify_f_square_decomposition, verify_f_square_expansion, verify_k_square_decomposition,
    verify_mellin_barnes, verify_xi_star_k, IdentityReport, MellinBarnesSpec,
};
use realzeros_core::numerics::QuadratureSpec;
use realzeros_core::Error;

fn same(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE)
}

fn mirrored(r: &IdentityReport, s: &IdentityReport) -> bool {
    let scale = r.lhs.abs().max(r.rhs.abs());
    same(r.lhs, s.lhs, scale) && same(r.rhs, s.rhs, scale) && r.pass == s.pass
}

fn k_square(a: f64, x: f64, y: f64) -> f64 {
    eval_k_iz(Complex64::new(x, y), a).unwrap().norm_sqr()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn k_square_reports_are_symmetric(a in 0.5f64..7.0, x in 0.0f64..10.0, y in 0.05f64..2.5) {
        let spec = QuadratureSpec::default();
        let r = verify_k_square_decomposition(a, x, y, &spec).unwrap();
        for (xs, ys) in [(x, -y), (-x, y), (-x, -y)] {
            let s = verify_k_square_decomposition(a, xs, ys, &spec).unwrap();
            prop_assert!(mirrored(&r, &s), "{:?} vs {:?}", r, s);
        }
        prop_assert!(r.pass);
    }

    #[test]
    fn f_square_reports_are_symmetric(a in 0.5f64..7.0, c in 0.1f64..3.0, x in 0.0f64..8.0, y in 0.05f64..1.5) {
        let r = verify_f_square_decomposition(a, c, x, y).unwrap();
        let e = verify_f_square_expansion(a, c, x, y).unwrap();
        for (xs, ys) in [(x, -y), (-x, y)] {
            prop_assert!(mirrored(&r, &verify_f_square_decomposition(a, c, xs, ys).unwrap()));
            prop_assert!(mirrored(&e, &verify_f_square_expansion(a, c, xs, ys).unwrap()));
        }
        prop_assert!(r.pass && e.pass);
    }

    #[test]
    fn mellin_reports_are_symmetric(a in 0.5f64..7.0, x in 0.0f64..4.0, y in 0.1f64..1.5) {
        let r = verify_mellin_barnes(a, x, y, &MellinBarnesSpec::for_y(y)).unwrap();
        for (xs, ys) in [(x, -y), (-x, y)] {
            let s = verify_mellin_barnes(a, xs, ys, &MellinBarnesSpec::for_y(ys)).unwrap();
            prop_assert!(mirrored(&r, &s), "{:?} vs {:?}", r, s);
        }
    }

    #[test]
    fn xi_star_report_is_symmetric(x in 0.0f64..20.0, y in 0.0f64..3.0) {
        let r = verify_xi_star_k(Complex64::new(x, y)).unwrap();
        let s = verify_xi_star_k(Complex64::new(-x, -y)).unwrap();
        prop_assert!(mirrored(&r, &s));
        prop_assert!(r.pass);
    }

    #[test]
    fn k_square_grows_away_from_the_axis(a in 0.5f64..7.0, x in 0.0f64..10.0, y1 in 0.0f64..3.0, dy in 0.01f64..1.0) {
        let (lo, hi) = (k_square(a, x, y1), k_square(a, x, y1 + dy));
        prop_assert!(hi >= lo * (1.0 - 1e-12), "a={} x={} y={}: {} then {}", a, x, y1, lo, hi);
    }
}

#[test]
fn k_square_monotone_with_minimum_on_axis() {
    for a in [1.0, 2.0 * PI] {
        for x in [0.0, 1.0, 5.0] {
            let ys: Vec<f64> = (-30..=30).map(|k| k as f64 / 10.0).collect();
            let vs: Vec<f64> = ys.iter().map(|&y| k_square(a, x, y)).collect();
            let mid = 30;
            for k in mid..vs.len() - 1 {
                assert!(vs[k + 1] >= vs[k], "a={a} x={x} y={}", ys[k]);
            }
            let (argmin, _) = vs
                .iter()
                .enumerate()
                .fold((0, f64::INFINITY), |(i, m), (j, &v)| if v < m { (j, v) } else { (i, m) });
            assert_eq!(ys[argmin], 0.0, "a={a} x={x}");
        }
    }
}

#[test]
fn contour_to_the_right_is_rejected() {
    let mb = MellinBarnesSpec {
        c_line: -0.3,
        ..MellinBarnesSpec::for_y(0.5)
    };
    assert!(matches!(verify_mellin_barnes(1.0, 1.0, 0.5, &mb), Err(Error::Contour { .. })));
}
