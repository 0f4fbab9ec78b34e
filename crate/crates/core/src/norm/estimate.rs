use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::geom::Point;
use crate::parallel;
use crate::paths::{solve_b, SolverStatus};
use crate::percolation::{anchor, label_clusters, margin, Configuration};
use crate::rng;
use crate::stats;

/// Attempts per replica before giving up on finding usable anchors.
pub const RETRY_BUDGET: u32 = 20;

/// One replica's measurement of `b([0],[n·dir])/n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectionalSample {
    pub direction: (f64, f64),
    pub scale: u32,
    pub value: f64,
    pub seed: u64,
    /// Lengths of the optimal witnesses, per dihedral image evaluated.
    pub witness_len: Vec<usize>,
    pub b_values: Vec<f64>,
    pub fallbacks: u32,
    pub resampled: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub direction: (f64, f64),
    pub scale: u32,
    pub mean: f64,
    pub stderr: f64,
    pub count: usize,
    pub samples: Vec<f64>,
    /// Replicas redrawn because an anchor was missing or too far away.
    pub resampled: u32,
    /// Solver calls that needed the branch-and-bound fallback.
    pub fallbacks: u32,
    /// Smallest `b(γ)/|γ|` over all witnesses: an empirical floor for the
    /// density of open edges on right boundaries.
    pub boundary_floor: f64,
    /// Set when the mean falls below a third of the boundary floor.
    pub positivity_alarm: bool,
}

/// Box radius for measuring `b([0],[n·dir])`: large enough that both
/// anchors lie in the safe region with room to spare.
pub fn box_radius_for(scale: u32, dir: (f64, f64)) -> i32 {
    let extent = (scale as f64 * dir.0.abs().max(dir.1.abs())).ceil() as i32 + 1;
    let mut n = extent.max(2);
    loop {
        let want = extent + margin(n);
        if want <= n {
            return n;
        }
        n = want;
    }
}

/// The eight images of a vector under the symmetries of the square.
pub fn dihedral_images(v: (f64, f64)) -> [(f64, f64); 8] {
    let (a, b) = v;
    [(a, b), (b, a), (-b, a), (-a, b), (-a, -b), (-b, -a), (b, -a), (a, -b)]
}

pub(crate) fn check_supercritical(p: f64) -> Result<()> {
    if !(p > 0.5 && p <= 1.0) {
        return Err(domain(format!("p = {p} is not supercritical (need 1/2 < p <= 1)")));
    }
    Ok(())
}

/// Measures one replica. With `symmetrize`, all eight images of the
/// direction are measured on the same configuration and averaged.
pub fn sample_direction(p: f64, dir: (f64, f64), scale: u32, seed: u64, symmetrize: bool) -> Result<DirectionalSample> {
    check_supercritical(p)?;
    if scale < 2 {
        return Err(domain("scale must be at least 2"));
    }
    if dir.0 == 0.0 && dir.1 == 0.0 {
        return Err(domain("direction must be nonzero"));
    }
    let radius = box_radius_for(scale, dir);
    let images: Vec<(f64, f64)> = if symmetrize { dihedral_images(dir).to_vec() } else { vec![dir] };
    let n = scale as f64;
    'attempt: for attempt in 0..RETRY_BUDGET {
        let s = rng::derive_seed(seed, rng::tag::REPLICA, attempt as u64);
        let cfg = Configuration::sample(p, radius, s)?;
        let labeling = label_clusters(&cfg);
        let slack = margin(radius) as f64;
        let origin = match anchor((0.0, 0.0), &labeling) {
            Ok(a) if a.distance <= slack => a.anchor,
            Ok(_) | Err(Error::NoCluster) => continue 'attempt,
            Err(e) => return Err(e),
        };
        let mut b_values = Vec::with_capacity(images.len());
        let mut witness_len = Vec::with_capacity(images.len());
        let mut fallbacks = 0;
        for &(a, b) in &images {
            let target = match anchor((n * a, n * b), &labeling) {
                Ok(r) if r.distance <= slack => r.anchor,
                Ok(_) | Err(Error::NoCluster) => continue 'attempt,
                Err(e) => return Err(e),
            };
            let r = solve_b(origin, target, &labeling, &cfg)?;
            if r.status == SolverStatus::SearchFallback {
                fallbacks += 1;
            }
            b_values.push(r.value);
            witness_len.push(r.witness.len());
        }
        let value = b_values.iter().sum::<f64>() / (b_values.len() as f64 * n);
        return Ok(DirectionalSample {
            direction: dir,
            scale,
            value,
            seed,
            witness_len,
            b_values,
            fallbacks,
            resampled: attempt,
        });
    }
    Err(Error::Precondition(format!(
        "no usable anchors for direction {dir:?} at scale {scale} after {RETRY_BUDGET} attempts"
    )))
}

/// Replica `i` of a run with base seed `seed`.
pub fn replica_seed(seed: u64, i: usize) -> u64 {
    rng::derive_seed(seed, rng::tag::REPLICA ^ 0x5eed, i as u64)
}

pub(crate) fn summarize(dir: (f64, f64), scale: u32, samples: Vec<DirectionalSample>) -> NormEstimate {
    let values: Vec<f64> = samples.iter().map(|s| s.value).collect();
    let (mean, stderr) = stats::mean_stderr(&values);
    let mut floor = f64::INFINITY;
    for s in &samples {
        for (b, &l) in s.b_values.iter().zip(&s.witness_len) {
            if l > 0 {
                floor = floor.min(b / l as f64);
            }
        }
    }
    NormEstimate {
        direction: dir,
        scale,
        mean,
        stderr,
        count: values.len(),
        samples: values,
        resampled: samples.iter().map(|s| s.resampled).sum(),
        fallbacks: samples.iter().map(|s| s.fallbacks).sum(),
        boundary_floor: floor,
        positivity_alarm: floor.is_finite() && mean < floor / 3.0,
    }
}

pub fn estimate_direction_with(
    p: f64,
    dir: (f64, f64),
    scale: u32,
    replicas: usize,
    seed: u64,
    symmetrize: bool,
) -> Result<NormEstimate> {
    check_supercritical(p)?;
    if replicas < 2 {
        return Err(domain("at least two replicas are needed for a standard error"));
    }
    let samples = parallel::map_indexed(replicas, |i| sample_direction(p, dir, scale, replica_seed(seed, i), symmetrize))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(dir, scale, samples))
}

/// Mean and standard error of `b([0],[n·dir])/n` over independent replicas.
pub fn estimate_direction(p: f64, dir: (f64, f64), scale: u32, replicas: usize, seed: u64) -> Result<NormEstimate> {
    estimate_direction_with(p, dir, scale, replicas, seed, false)
}

pub fn unit(dir: (f64, f64)) -> (f64, f64) {
    let u = Point::new(dir.0, dir.1).unit();
    (u.x, u.y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_one_horizontal_is_exact() {
        let e = estimate_direction(1.0, (1.0, 0.0), 64, 3, 1).unwrap();
        assert_eq!(e.mean, 63.0 / 64.0);
        assert_eq!(e.stderr, 0.0);
    }

    #[test]
    fn p_one_diagonal() {
        let e = estimate_direction(1.0, (1.0, 1.0), 8, 2, 1).unwrap();
        assert_eq!(e.mean, 14.0 / 8.0);
    }

    #[test]
    fn rejects_subcritical() {
        assert!(estimate_direction(0.5, (1.0, 0.0), 8, 2, 1).is_err());
        assert!(estimate_direction(0.7, (1.0, 0.0), 8, 1, 1).is_err());
    }

    #[test]
    fn radius_leaves_margin() {
        for n in [8u32, 16, 64, 128] {
            let r = box_radius_for(n, (1.0, 0.0));
            assert!(r - margin(r) > n as i32);
        }
    }
}
