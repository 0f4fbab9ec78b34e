//! Seeded bond percolation on finite boxes of Z², its clusters, and the
//! finite-volume proxies used for the infinite cluster.

mod cluster;
mod config;
mod dump;

pub use cluster::{
    anchor, anchor_site, box_sites, chemical_distance, cluster_density, core_box_agreement,
    giant_density, label_clusters, margin, open_edges_at, safe_radius, Agreement, AnchorResult,
    ClusterLabeling,
};
pub use config::Configuration;
pub use dump::{read_dump, write_dump, DUMP_VERSION};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::parallel;
use crate::rng;
use crate::stats;

/// Giant-density estimate of θ_p over a batch of seeds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaEstimate {
    pub p: f64,
    pub radius: i32,
    pub seed: u64,
    pub samples: Vec<f64>,
    pub mean: f64,
    pub stderr: f64,
}

/// Estimates θ_p from `count` independent boxes of radius `radius`. Replica
/// `i` uses the seed derived from `(seed, i)`.
pub fn estimate_theta(p: f64, radius: i32, seed: u64, count: usize) -> Result<ThetaEstimate> {
    let samples = parallel::map_indexed(count, |i| -> Result<f64> {
        let s = rng::derive_seed(seed, rng::tag::REPLICA, i as u64);
        let cfg = Configuration::sample(p, radius, s)?;
        Ok(giant_density(&label_clusters(&cfg)))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let (mean, stderr) = stats::mean_stderr(&samples);
    Ok(ThetaEstimate { p, radius, seed, samples, mean, stderr })
}

/// Writes density reports as `seed,p,N,theta_hat,stderr`, one row per batch.
pub fn write_theta_csv<W: std::io::Write>(w: W, rows: &[ThetaEstimate]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["seed", "p", "N", "theta_hat", "stderr"])?;
    for r in rows {
        out.write_record([
            r.seed.to_string(),
            stats::fmt_f64(r.p),
            r.radius.to_string(),
            stats::fmt_f64(r.mean),
            stats::fmt_f64(r.stderr),
        ])?;
    }
    out.flush()?;
    Ok(())
}
