use std::f64::consts::PI;

use proptest::prelude::*;

use realzeros_core::functions::FunctionId;
use realzeros_core::zeros::{
    certify_reality, count_zeros_rectangle, grid, jensen_scan, scan_real_zeros, Rectangle, WindingSpec,
};
use realzeros_core::Error;

fn k2pi() -> FunctionId {
    FunctionId::KOrder { a: 2.0 * PI }
}

fn acceptance_rectangles() -> Vec<(FunctionId, Rectangle)> {
    let rect = |x_hi: f64, h: f64| Rectangle::new(0.0, x_hi, -h, h).unwrap();
    vec![
        (k2pi(), rect(20.0, 2.0)),
        (FunctionId::XiStar, rect(30.0, 4.0)),
        (FunctionId::F { a: 1.0, c: 2.0 }, rect(15.0, 3.0)),
        (FunctionId::XiStarStar, rect(30.0, 4.0)),
        (
            FunctionId::XiGeneral {
                big_a: 4.0,
                big_b: 1.0,
                a: 3.0,
                b: 1.0,
                c: 2.0,
            },
            rect(20.0, 3.0),
        ),
    ]
}

fn count(fid: &FunctionId, r: &Rectangle) -> Result<i64, Error> {
    count_zeros_rectangle(fid, r).map(|w| w.count)
}

#[test]
fn no_zero_near_the_origin() {
    assert!(scan_real_zeros(&k2pi(), 0.0, 0.5, 0.05).unwrap().is_empty());
    let r = Rectangle::new(0.1, 0.5, -0.5, 0.5).unwrap();
    assert_eq!(count(&k2pi(), &r).unwrap(), 0);
}

#[test]
fn rectangle_around_the_first_zero() {
    let zeros = scan_real_zeros(&k2pi(), 0.0, 20.0, 0.05).unwrap();
    let x1 = zeros.zeros[0].location;
    let r = Rectangle::new(x1 - 0.1, x1 + 0.1, -1.0, 1.0).unwrap();
    assert_eq!(count(&k2pi(), &r).unwrap(), 1);
    let fine = WindingSpec {
        spacing: 0.05,
        ..WindingSpec::default()
    };
    let w = realzeros_core::zeros::count_zeros_with(|z| k2pi().eval(z), &r, &fine).unwrap();
    assert_eq!(w.count, 1);
}

#[test]
fn scans_stable_under_halving_the_step() {
    for (fid, r) in acceptance_rectangles() {
        let a = scan_real_zeros(&fid, r.x_lo, r.x_hi, 0.05).unwrap();
        let b = scan_real_zeros(&fid, r.x_lo, r.x_hi, 0.025).unwrap();
        assert_eq!(a.len(), b.len(), "{fid}");
        for (p, q) in a.locations().iter().zip(b.locations()) {
            assert!((p - q).abs() <= 1e-10 * p.abs().max(1.0), "{fid}: {p} vs {q}");
        }
    }
}

#[test]
fn certified_rectangles_pass_the_jensen_scan() {
    for (fid, r) in acceptance_rectangles() {
        let c = certify_reality(&fid, &r, 0.05, &WindingSpec::default()).unwrap();
        assert!(c.certified, "{fid}");
        let xs = grid(r.x_lo, r.x_hi, 0.5).unwrap();
        let ys = grid(r.y_lo, r.y_hi, 0.5).unwrap();
        let j = jensen_scan(&fid, &xs, &ys).unwrap();
        assert!(j.pass, "{fid}: {j:?}");
    }
}

#[test]
fn xi_star_zeros_are_symmetric() {
    let right = scan_real_zeros(&FunctionId::XiStar, 0.0, 30.0, 0.05).unwrap();
    let left = scan_real_zeros(&FunctionId::XiStar, -30.0, 0.0, 0.05).unwrap();
    let mut mirrored: Vec<f64> = left.locations().iter().map(|x| -x).collect();
    mirrored.reverse();
    assert_eq!(mirrored.len(), right.len());
    for (p, q) in mirrored.iter().zip(right.locations()) {
        assert!((p - q).abs() <= 1e-10 * q.abs(), "{p} vs {q}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn winding_counts_are_conjugate_symmetric(
        x_lo in 0.0f64..25.0,
        width in 0.5f64..5.0,
        y_lo in 0.1f64..3.0,
        height in 0.2f64..2.0,
    ) {
        let fid = FunctionId::XiStar;
        let r = Rectangle::new(x_lo, x_lo + width, y_lo, y_lo + height).unwrap();
        let up = count(&fid, &r);
        let down = count(&fid, &r.conjugate());
        prop_assume!(!matches!(up, Err(Error::BoundaryZero { .. })));
        prop_assert_eq!(up.unwrap(), down.unwrap());
        // Off the real axis there is nothing to find.
        prop_assert_eq!(count(&fid, &r).unwrap(), 0);
    }

    #[test]
    fn winding_counts_add_over_a_split(split in 0.5f64..29.5) {
        let fid = FunctionId::XiStar;
        let whole = Rectangle::new(0.0, 30.0, -4.0, 4.0).unwrap();
        let left = Rectangle { x_hi: split, ..whole };
        let right = Rectangle { x_lo: split, ..whole };
        let (l, r) = (count(&fid, &left), count(&fid, &right));
        prop_assume!(!matches!(l, Err(Error::BoundaryZero { .. })) && !matches!(r, Err(Error::BoundaryZero { .. })));
        prop_assert_eq!(l.unwrap() + r.unwrap(), count(&fid, &whole).unwrap());
    }

    #[test]
    fn symmetric_rectangles_count_real_zeros(x_lo in 0.0f64..15.0, width in 1.0f64..10.0, h in 0.5f64..2.0) {
        let fid = k2pi();
        let r = Rectangle::new(x_lo, x_lo + width, -h, h).unwrap();
        let c = certify_reality(&fid, &r, 0.05, &WindingSpec::default());
        prop_assume!(!matches!(c, Err(Error::BoundaryZero { .. })));
        let c = c.unwrap();
        prop_assert!(c.certified, "{:?}", c);
    }
}
