//! ε-optimal paths by segment subdivision.
//!
//! Splitting the segment from `x` to `y` into many short pieces and
//! concatenating optimal paths between anchors of consecutive break points
//! gives a path whose cost is close to optimal and which stays near the
//! straight segment.

use serde::{Deserialize, Serialize};

use super::path::{path_costs, star_concat, LatticePath};
use super::solver::{solve_b, DistanceResult};
use crate::error::{domain, Result};
use crate::geom::{hausdorff_polyline_segment, Point};
use crate::lattice::Site;
use crate::percolation::{anchor, ClusterLabeling, Configuration};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsilonReport {
    pub epsilon: f64,
    pub optimal: DistanceResult,
    /// Number of pieces of the subdivided construction.
    pub pieces: usize,
    pub subdivided: LatticePath,
    pub subdivided_b: u32,
    /// Whether `b(subdivided) - b(x,y) <= ε‖y−x‖∞`.
    pub subdivided_is_eps_optimal: bool,
    /// ℓ∞ Hausdorff distance to the segment, divided by `‖y−x‖∞`.
    pub dh_optimal: f64,
    pub dh_subdivided: f64,
}

/// Sampling step used for the segment-to-path half of the Hausdorff distance.
const DH_STEP: f64 = 0.125;

pub fn epsilon_optimal(
    x: Site,
    y: Site,
    epsilon: f64,
    cfg: &Configuration,
    labeling: &ClusterLabeling,
) -> Result<EpsilonReport> {
    if !(epsilon >= 0.0) {
        return Err(domain("epsilon must be nonnegative"));
    }
    let optimal = solve_b(x, y, labeling, cfg)?;
    let dist = x.dist_inf(y) as f64;
    let seg = |p: &LatticePath| {
        if dist == 0.0 {
            return 0.0;
        }
        let pts: Vec<Point> = p.vertices().iter().map(|&s| s.into()).collect();
        hausdorff_polyline_segment(&pts, x.into(), y.into(), DH_STEP) / dist
    };
    let dh_optimal = seg(&optimal.witness);
    let (pieces, subdivided) = if epsilon == 0.0 || dist == 0.0 {
        (1, optimal.witness.clone())
    } else {
        let alpha = optimal.witness.len() as f64 / dist;
        let n = ((4.0 * alpha / epsilon).ceil() as usize).clamp(1, dist as usize);
        (n, subdivided_path(x, y, n, cfg, labeling)?)
    };
    let subdivided_b = path_costs(&subdivided, cfg)?.b;
    Ok(EpsilonReport {
        epsilon,
        subdivided_is_eps_optimal: subdivided_b as f64 - optimal.value <= epsilon * dist + 1e-9,
        dh_subdivided: seg(&subdivided),
        dh_optimal,
        pieces,
        subdivided,
        subdivided_b,
        optimal,
    })
}

/// Splits the segment from `x` to `y` into `pieces` equal parts, anchors the
/// break points, and ∗-concatenates optimal paths between consecutive anchors.
pub fn subdivided_path(
    x: Site,
    y: Site,
    pieces: usize,
    cfg: &Configuration,
    labeling: &ClusterLabeling,
) -> Result<LatticePath> {
    let n = pieces.max(1);
    let mut breaks = vec![x];
    for k in 1..n {
        let u = Point::from(x).lerp(y.into(), k as f64 / n as f64);
        let a = anchor((u.x, u.y), labeling)?.anchor;
        if a != *breaks.last().unwrap() {
            breaks.push(a);
        }
    }
    if *breaks.last().unwrap() != y {
        breaks.push(y);
    }
    let mut path = LatticePath::trivial(x);
    for w in breaks.windows(2) {
        let piece = solve_b(w[0], w[1], labeling, cfg)?.witness;
        path = star_concat(&path, &piece)?;
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::percolation::label_clusters;

    #[test]
    fn straight_line_at_p_one() {
        let cfg = Configuration::sample(1.0, 30, 0).unwrap();
        let l = label_clusters(&cfg);
        let r = epsilon_optimal(Site::ORIGIN, Site::new(12, 0), 0.5, &cfg, &l).unwrap();
        assert!(r.dh_optimal * 12.0 <= 1.0 + 1e-9);
        assert!(r.subdivided_is_eps_optimal);
        let z = epsilon_optimal(Site::ORIGIN, Site::new(12, 0), 0.0, &cfg, &l).unwrap();
        assert_eq!(z.subdivided, z.optimal.witness);
    }
}
