//! Sample a supercritical configuration and estimate the density θ_p of
//! its infinite cluster.
//!
//! ```text
//! cargo run --release --example percolation -- 0.7
//! ```

use perciso::lattice::Site;
use perciso::percolation::{anchor, estimate_theta, label_clusters, safe_radius, Configuration};

fn main() -> perciso::Result<()> {
    let p: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0.7);
    let radius = 40;
    let cfg = Configuration::sample(p, radius, 7)?;
    let l = label_clusters(&cfg);
    println!("p = {p}, box B∞({radius}): {} of {} edges open", cfg.open_edge_count(), cfg.edge_count());
    println!("{} clusters, giant has {} sites", l.cluster_count(), l.giant_size());
    println!("safe region radius {}", safe_radius(radius));

    // Points off the giant are moved to the nearest giant site.
    for q in [(0.0, 0.0), (10.3, -4.8), (-20.0, 15.5)] {
        let a = anchor(q, &l)?;
        println!("anchor of {q:?} is {:?} at distance {}", a.anchor, a.distance);
    }
    println!("origin in giant: {}", l.in_giant(Site::ORIGIN));

    let est = estimate_theta(p, 32, 1, 20)?;
    println!("θ̂ = {:.4} ± {:.4} over {} boxes", est.mean, est.stderr, est.samples.len());
    Ok(())
}
