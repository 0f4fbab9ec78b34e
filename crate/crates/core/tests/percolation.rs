use perciso::lattice::Site;
use perciso::percolation::{
    chemical_distance, estimate_theta, label_clusters, read_dump, write_dump, Configuration,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn sampling_is_deterministic(seed in any::<u64>(), p in 0.0f64..=1.0) {
        let a = Configuration::sample(p, 6, seed).unwrap();
        let b = Configuration::sample(p, 6, seed).unwrap();
        prop_assert_eq!(&a, &b);
        let (la, lb) = (label_clusters(&a), label_clusters(&b));
        for s in a.sites() {
            prop_assert_eq!(la.label(s), lb.label(s));
            prop_assert_eq!(la.eta(s), lb.eta(s));
        }
    }

    #[test]
    fn monotone_coupling(seed in any::<u64>(), p in 0.0f64..1.0, dp in 0.0f64..0.5) {
        let lo = Configuration::sample(p, 5, seed).unwrap();
        let hi = Configuration::sample((p + dp).min(1.0), 5, seed).unwrap();
        for k in lo.edges() {
            prop_assert!(!lo.is_open(k) || hi.is_open(k));
        }
    }

    #[test]
    fn chemical_distance_dominates_l1(seed in any::<u64>(), x in -4i32..=4, y in -4i32..=4, u in -4i32..=4, v in -4i32..=4) {
        let cfg = Configuration::sample(0.7, 4, seed).unwrap();
        let (a, b) = (Site::new(x, y), Site::new(u, v));
        if let Some(d) = chemical_distance(&cfg, a, b) {
            prop_assert!(d as i32 >= a.dist_l1(b));
        }
    }

    #[test]
    fn dump_roundtrip(seed in any::<u64>()) {
        let cfg = Configuration::sample(0.6, 5, seed).unwrap();
        let mut buf = Vec::new();
        write_dump(&mut buf, &cfg).unwrap();
        prop_assert_eq!(read_dump(&buf[..]).unwrap(), cfg);
    }
}

#[test]
fn theta_batches_agree() {
    let a = estimate_theta(0.7, 24, 1, 30).unwrap();
    let b = estimate_theta(0.7, 24, 2, 30).unwrap();
    assert!((a.mean - b.mean).abs() <= 3.0 * a.stderr.hypot(b.stderr), "{} vs {}", a.mean, b.mean);
}

#[test]
fn theta_is_schedule_independent() {
    let one = perciso::parallel::with_threads(1, || estimate_theta(0.65, 12, 3, 8).unwrap());
    let four = perciso::parallel::with_threads(4, || estimate_theta(0.65, 12, 3, 8).unwrap());
    assert_eq!(one, four);
}
