use std::sync::OnceLock;

use perciso::norm::{build_norm_table, estimate_direction, NormTable, NormTableRun};
use proptest::prelude::*;

fn table() -> &'static NormTableRun {
    static T: OnceLock<NormTableRun> = OnceLock::new();
    T.get_or_init(|| build_norm_table(0.75, 4, 16, 8, 11, true).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn homogeneous(x in -10.0f64..10.0, y in -10.0f64..10.0, l in -5.0f64..5.0) {
        let t = &table().table;
        let (a, b) = (t.eval(l * x, l * y), l.abs() * t.eval(x, y));
        prop_assert!((a - b).abs() <= 1e-12 * b.max(1.0));
    }

    #[test]
    fn dihedral_invariant(x in -10.0f64..10.0, y in -10.0f64..10.0) {
        let t = &table().table;
        let v = t.eval(x, y);
        for w in [t.eval(y, x), t.eval(-x, y), t.eval(x, -y), t.eval(-y, -x), t.eval(-x, -y)] {
            prop_assert_eq!(v, w);
        }
    }

    #[test]
    fn lipschitz(x in -3.0f64..3.0, y in -3.0f64..3.0, dx in -0.5f64..0.5, dy in -0.5f64..0.5) {
        let t = &table().table;
        let l = t.max_value();
        let d = (t.eval(x + dx, y + dy) - t.eval(x, y)).abs();
        prop_assert!(d <= l * (dx.abs() + dy.abs()) + 1e-12);
    }
}

#[test]
fn positive_without_alarm() {
    let run = table();
    assert!(run.table.entries().iter().all(|e| e.beta_mean > 0.0));
    assert!(!run.positivity_alarm());
    for e in &run.estimates {
        assert!(e.mean >= e.boundary_floor / 3.0);
    }
}

#[test]
fn symmetric_directions_agree() {
    let pairs = [((1.0, 0.0), (0.0, 1.0)), ((1.0, 1.0), (-1.0, 1.0)), ((2.0, 1.0), (1.0, -2.0))];
    for (a, b) in pairs {
        let ea = estimate_direction(0.7, a, 16, 40, 5).unwrap();
        let eb = estimate_direction(0.7, b, 16, 40, 6).unwrap();
        assert!((ea.mean - eb.mean).abs() <= 3.0 * ea.stderr.hypot(eb.stderr), "{a:?} {b:?}: {} vs {}", ea.mean, eb.mean);
    }
}

#[test]
fn table_csv_roundtrip() {
    let t = &table().table;
    let mut buf = Vec::new();
    t.write_csv(&mut buf).unwrap();
    assert!(String::from_utf8_lossy(&buf).starts_with("dir_x,dir_y,beta_mean,beta_stderr,samples,scale"));
    let back = NormTable::read_csv(&buf[..]).unwrap();
    assert_eq!(back.entries(), t.entries());
}
