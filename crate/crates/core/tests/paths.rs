use perciso::lattice::Site;
use perciso::paths::{
    exhaustive_b, from_interface, is_rightmost, path_costs, random_rightmost, right_boundary, solve_b, star_concat,
    to_interface,
};
use perciso::percolation::{chemical_distance, label_clusters, Configuration};
use perciso::rng::{tag, Stream};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_paths_are_rightmost_and_bounded(seed in any::<u64>()) {
        let mut rng = Stream::new(seed, tag::AUX);
        let g = random_rightmost(Site::ORIGIN, Site::ORIGIN, 6, 30, &mut rng).unwrap();
        prop_assert!(is_rightmost(&g));
        let (n, b) = (g.len() as f64, right_boundary(&g).len() as f64);
        prop_assert!(n / 3.0 - 2.0 <= b && b <= 3.0 * n);
        if !g.is_empty() {
            let i = to_interface(&g).unwrap();
            prop_assert_eq!(from_interface(&i).unwrap(), g.clone());
            prop_assert_eq!(i.reflect_count(), g.len());
            prop_assert_eq!(i.cut_count(), right_boundary(&g).len());
        }
    }

    #[test]
    fn star_concat_stays_rightmost(seed in any::<u64>()) {
        let mut rng = Stream::new(seed, tag::AUX);
        let a = random_rightmost(Site::new(-2, 1), Site::ORIGIN, 4, 20, &mut rng).unwrap();
        let b = random_rightmost(a.end(), Site::ORIGIN, 4, 20, &mut rng).unwrap();
        let c = star_concat(&a, &b).unwrap();
        prop_assert_eq!(c.start(), a.start());
        prop_assert_eq!(c.end(), b.end());
        if !c.is_circuit() {
            prop_assert!(is_rightmost(&c));
        }
    }

    #[test]
    fn solver_is_shift_equivariant(seed in any::<u64>(), zx in -20i32..20, zy in -20i32..20) {
        let cfg = Configuration::sample(0.75, 3, seed).unwrap();
        let z = Site::new(zx, zy);
        let moved = cfg.translated(z);
        let (l, lm) = (label_clusters(&cfg), label_clusters(&moved));
        let (x, y) = (Site::new(-2, -1), Site::new(2, 1));
        if chemical_distance(&cfg, x, y).is_some() {
            let a = solve_b(x, y, &l, &cfg).unwrap();
            let s = |p: Site| Site::new(p.x + zx, p.y + zy);
            let b = solve_b(s(x), s(y), &lm, &moved).unwrap();
            prop_assert_eq!(a.value, b.value);
            prop_assert_eq!(b.witness, a.witness.translated(z));
        }
    }

    #[test]
    fn solver_beats_relaxation_and_matches_oracle(seed in any::<u64>()) {
        let cfg = Configuration::sample(0.7, 3, seed).unwrap();
        let l = label_clusters(&cfg);
        let (x, y) = (Site::new(-3, 0), Site::new(1, 2));
        if let Some(d) = chemical_distance(&cfg, x, y) {
            let r = solve_b(x, y, &l, &cfg).unwrap();
            prop_assert!(r.value >= r.lower_bound);
            prop_assert!(is_rightmost(&r.witness));
            prop_assert_eq!(path_costs(&r.witness, &cfg).unwrap().b as f64, r.value);
            prop_assert!(r.value <= 3.0 * d as f64);
            let (e, _) = exhaustive_b(x, y, &cfg, Some(r.value as u32), u64::MAX).unwrap().unwrap();
            prop_assert_eq!(e as f64, r.value);
        }
    }
}

#[test]
fn p_one_straight_distance() {
    let cfg = Configuration::full(10).unwrap();
    let l = label_clusters(&cfg);
    let r = solve_b(Site::new(-4, 0), Site::new(4, 0), &l, &cfg).unwrap();
    assert_eq!(r.value, 7.0);
}
