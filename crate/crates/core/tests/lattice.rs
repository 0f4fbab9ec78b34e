use perciso::lattice::{dual_of, dual_of_dual, right_boundary_dirs, DirectedEdge, Direction, DualEdge, Site};
use proptest::prelude::*;

fn dir() -> impl Strategy<Value = Direction> {
    (0usize..4).prop_map(Direction::from_index)
}

#[test]
fn boundary_count_formula() {
    for back in Direction::ALL {
        for fwd in Direction::ALL {
            let n = right_boundary_dirs(back, fwd).count();
            assert_eq!(n, (fwd.index() + 8 - back.index() - 1) % 4, "{back:?} {fwd:?}");
        }
    }
}

#[test]
fn boundary_then_forward_is_a_ccw_arc() {
    for back in Direction::ALL {
        for fwd in Direction::ALL {
            let mut arc: Vec<Direction> = right_boundary_dirs(back, fwd).collect();
            arc.push(fwd);
            let mut d = back;
            for &a in &arc {
                d = d.ccw_next();
                assert_eq!(a, d);
            }
            assert!(!arc[..arc.len() - 1].contains(&back));
        }
        let full: Vec<Direction> = right_boundary_dirs(back, back.cw_next()).chain([back.cw_next()]).collect();
        let mut rest: Vec<Direction> = Direction::ALL.into_iter().filter(|&d| d != back).collect();
        let k = rest.iter().position(|&d| d == back.ccw_next()).unwrap();
        rest.rotate_left(k);
        assert_eq!(full, rest);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn dual_twice_reverses(x in -50i32..50, y in -50i32..50, d in dir()) {
        let e = DirectedEdge::new(Site::new(x, y), d);
        prop_assert_eq!(dual_of_dual(dual_of(e)), e.reverse());
        let de = dual_of(e);
        prop_assert_eq!(DualEdge::from_dual_directed(de.as_dual_directed()), de);
        prop_assert_eq!(e.key(), e.reverse().key());
    }

    #[test]
    fn steps_are_adjacent(x in -50i32..50, y in -50i32..50, d in dir()) {
        let s = Site::new(x, y);
        prop_assert!(s.is_adjacent(s.step(d)));
        prop_assert_eq!(s.step(d).step(d.reverse()), s);
        prop_assert_eq!(s.direction_to(s.step(d)), Some(d));
    }
}
