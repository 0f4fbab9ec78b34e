use std::collections::HashSet;

use perciso::iso::{
    boundary_of, cheeger_exact, host_box_radius, limit_report, lower_bound_audit, wulff_candidate, CandidateSet, Host,
    IsoMode, LimitOptions, AUDIT_ZETA, CANDIDATE_EPSILON,
};
use perciso::lattice::Site;
use perciso::percolation::{label_clusters, Configuration};
use perciso::rng::{tag, Stream};
use perciso::wulff::{build_wulff, NormHandle};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn boundary_matches_edge_scan(seed in any::<u64>(), keep in 0.05f64..0.9) {
        let cfg = Configuration::sample(0.7, 6, seed).unwrap();
        let l = label_clusters(&cfg);
        let host = Host::proxy(&cfg, &l);
        let mut rng = Stream::new(seed, tag::AUX);
        let u: HashSet<Site> = host.sites().filter(|_| rng.next_f64() < keep).collect();
        let fast = boundary_of(&u, &host).unwrap();
        let slow: std::collections::BTreeSet<_> = cfg
            .edges()
            .filter(|&k| {
                let (a, b) = k.endpoints();
                cfg.is_open(k) && (u.contains(&a) != u.contains(&b))
            })
            .collect();
        prop_assert_eq!(fast, slow);
    }
}

/// The minimum ratio over every subset of the host within the volume cap.
fn brute_cheeger(cfg: &Configuration, n: i32) -> f64 {
    let host = Host::core(cfg, n).unwrap();
    let sites: Vec<Site> = host.sites().collect();
    let cap = (sites.len() / 2).max(1);
    let mut best = f64::INFINITY;
    for mask in 1u32..(1 << sites.len()) {
        if mask.count_ones() as usize > cap {
            continue;
        }
        let u: HashSet<Site> = sites.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &s)| s).collect();
        best = best.min(boundary_of(&u, &host).unwrap().len() as f64 / u.len() as f64);
    }
    best
}

#[test]
fn exact_minimizers_are_complete() {
    for seed in 0..40 {
        let cfg = Configuration::sample(0.8, host_box_radius(1), seed).unwrap();
        if Host::core(&cfg, 1).unwrap().size() < 2 {
            continue;
        }
        let a = cheeger_exact(&cfg, 1, 1_000_000).unwrap();
        let b = cheeger_exact(&cfg, 1, 2_000_000).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.ratio, brute_cheeger(&cfg, 1), "seed {seed}");
    }
}

#[test]
fn cheeger_candidates_respect_the_cap() {
    let shape = build_wulff(&NormHandle::L2, 360).unwrap();
    for seed in 0..6 {
        let cfg = Configuration::sample(0.7, host_box_radius(16), seed).unwrap();
        let l = label_clusters(&cfg);
        let c = wulff_candidate(&cfg, &l, 16, CANDIDATE_EPSILON, &shape, IsoMode::Cheeger).unwrap();
        assert!(c.set.volume() <= c.host_size / 2);
        assert!(c.inclusion);
        assert!(c.set.sites.iter().all(|s| s.norm_inf() <= 16));
    }
}

#[test]
fn upper_values_sit_above_the_audit_chain() {
    let run = limit_report(1.0, &[8, 16], &[0], IsoMode::Cheeger, &LimitOptions::default()).unwrap();
    for (row, set) in run.rows.iter().zip(&run.sets) {
        let cfg = Configuration::full(host_box_radius(row.n as i32)).unwrap();
        let l = label_clusters(&cfg);
        let host = Host::core(&cfg, row.n as i32).unwrap();
        let u = CandidateSet::from_sites(set.sites.iter().copied(), &host).unwrap();
        let a = lower_bound_audit(&cfg, &l, row.n, AUDIT_ZETA, &u, &NormHandle::L1, 4.0, 1.0, CANDIDATE_EPSILON).unwrap();
        assert!(a.structural_ok() && a.chain_holds(), "n = {}", row.n);
        let lower = row.n as f64 * a.scaled_bound / (u.volume() as f64).sqrt();
        assert!(row.value_scaled >= lower, "{} < {lower}", row.value_scaled);
    }
}
