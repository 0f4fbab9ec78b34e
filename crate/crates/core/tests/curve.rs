use perciso::curve::{
    hausdorff, in_hull, make_simple, poly_approx, symmetric_difference_area, vol, winding_number, Curve, SetRef, Winding,
};
use perciso::geom::Point;
use perciso::lattice::Site;
use perciso::paths::{for_each_rightmost, Scope};
use perciso::percolation::Configuration;
use perciso::wulff::NormHandle;
use proptest::prelude::*;

/// Frozen constant of the hull-area bound, fitted once on random polylines.
const AREA_C: f64 = 4.0;

fn polyline() -> impl Strategy<Value = Curve> {
    prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 3..12)
        .prop_filter_map("degenerate", |v| Curve::closed(v.into_iter().map(|(x, y)| Point::new(x, y)).collect()).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn polygonal_hull_is_close(c in polyline(), r in 0.05f64..2.0) {
        let p = poly_approx(&c, r).unwrap();
        let step = 10.0 / 256.0;
        let d = hausdorff(SetRef::Region(&c), SetRef::Region(&p)).unwrap();
        prop_assert!(d <= r + 2.0 * step, "d = {d}, r = {r}");
    }

    #[test]
    fn polygonal_hull_area(c in polyline(), r in 0.05f64..2.0) {
        let p = poly_approx(&c, r).unwrap();
        let a = symmetric_difference_area(&c, &p);
        prop_assert!(a <= AREA_C * r * c.length_inf().max(r), "area {a}, r {r}, len {}", c.length_inf());
    }

    #[test]
    fn make_simple_removes_crossings(c in polyline()) {
        let (s, _) = make_simple(&c, 0.01, &NormHandle::L2).unwrap();
        prop_assert!(s.is_simple());
    }
}

#[test]
fn vol_is_odd_winding_interior() {
    let cfg = Configuration::full(2).unwrap();
    let mut circuits = 0;
    for x in cfg.sites().collect::<Vec<_>>() {
        for_each_rightmost(x, 12, Scope::Config { cfg: &cfg, open_only: false }, u64::MAX, |g| {
            if g.is_empty() || !g.is_circuit() {
                return;
            }
            circuits += 1;
            let region = vol(g).unwrap();
            let curve = perciso::curve::interface_curve(g).unwrap();
            for px in -3..=3 {
                for py in -3..=3 {
                    let s = Site::new(px, py);
                    let p = Point::new(px as f64, py as f64);
                    let odd = matches!(winding_number(&curve, p), Winding::Around(w) if w % 2 != 0);
                    assert_eq!(region.contains(s), odd, "{g:?} at {s:?}");
                    if odd {
                        assert!(in_hull(&curve, p));
                    }
                }
            }
        })
        .unwrap();
    }
    assert!(circuits > 0);
}
