use std::sync::Arc;

use perciso::norm::NormTable;
use perciso::wulff::{build_wulff, NormHandle, WulffShape};
use proptest::prelude::*;

fn check_shape(s: &WulffShape, area_tol: f64) {
    assert!((s.normalized.area() - 1.0).abs() <= area_tol, "area {}", s.normalized.area());
    assert!(s.normalized.is_convex());
    let v = s.normalized.vertices();
    for i in 0..v.len() {
        let (a, b, c) = (v[i], v[(i + 1) % v.len()], v[(i + 2) % v.len()]);
        assert!((b - a).cross(c - b) >= -1e-12);
    }
}

#[test]
fn analytic_shapes() {
    for (n, k) in [(NormHandle::L1, 8), (NormHandle::Linf, 8), (NormHandle::L2, 360)] {
        let s = build_wulff(&n, k).unwrap();
        check_shape(&s, 1e-9);
        assert!(s.sandwich_holds(1e-9));
    }
}

#[test]
fn refinement_stable() {
    for n in [NormHandle::L1, NormHandle::Linf] {
        let a = build_wulff(&n, 8).unwrap().phi;
        let b = build_wulff(&n, 16).unwrap().phi;
        assert!((a - b).abs() <= 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn table_shapes_are_convex_unit_and_sandwiched(vals in prop::collection::vec(0.8f64..1.2, 3..7)) {
        let k = vals.len();
        let t = NormTable::from_fn(k, |x, y| {
            let a = y.atan2(x) / std::f64::consts::FRAC_PI_4 * (k - 1) as f64;
            vals[a.round() as usize] * x.hypot(y)
        }).unwrap();
        let s = build_wulff(&NormHandle::Table(Arc::new(t)), 360).unwrap();
        check_shape(&s, 1e-6);
        prop_assert!(s.sandwich_holds(1e-6));
        prop_assert!(s.r_inner >= 0.5 - 1e-6 && s.r_outer <= std::f64::consts::FRAC_1_SQRT_2 + 1e-6);
        prop_assert!(s.phi >= 2.0 * std::f64::consts::PI.sqrt() * 0.8 - 1e-9);
    }
}
