use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::host::{CandidateSet, Host};
use crate::curve::{curve_to_circuit, thin_polygon, vol, Curve, CurveToCircuitOptions, CurveToCircuitReport};
use crate::error::{domain, Error, Result};
use crate::lattice::Site;
use crate::percolation::{anchor_site, giant_density, margin, ClusterLabeling, Configuration};
use crate::wulff::WulffShape;

/// Default `ε` for candidate construction.
pub const CANDIDATE_EPSILON: f64 = 0.01;
/// Factor applied to `R` when a candidate overshoots its volume cap.
pub const SHRINK: f64 = 0.97;
const MAX_RESCALES: usize = 40;
/// Sides of the polygon the candidate circuit follows.
pub const CANDIDATE_SIDES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoMode {
    /// Anchored profile: connected `U ∋ 0` of volume at most `n`.
    Profile,
    /// Modified Cheeger constant on the giant of `B∞(n)`.
    Cheeger,
}

impl fmt::Display for IsoMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsoMode::Profile => "profile",
            IsoMode::Cheeger => "cheeger",
        })
    }
}

impl FromStr for IsoMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "profile" => Ok(IsoMode::Profile),
            "cheeger" => Ok(IsoMode::Cheeger),
            _ => Err(domain(format!("unknown mode {s:?}, expected profile or cheeger"))),
        }
    }
}

/// Initial scale of the Wulff candidate: `√2(1−ε^{2/3})n` for Cheeger, and
/// `√(n/θ)` for the profile so that `θ·Leb(RŴ) = n`.
pub fn candidate_scale(mode: IsoMode, n: usize, eps: f64, theta: f64) -> f64 {
    match mode {
        IsoMode::Cheeger => 2f64.sqrt() * (1.0 - eps.powf(2.0 / 3.0)) * n as f64,
        IsoMode::Profile => (n as f64 / theta).sqrt(),
    }
}

/// Box radius that accommodates the candidate for `(mode, n)`.
pub fn candidate_box_radius(mode: IsoMode, n: usize, shape: &WulffShape, theta: f64) -> i32 {
    let core = match mode {
        IsoMode::Cheeger => n as i32,
        IsoMode::Profile => (candidate_scale(mode, n, 0.0, theta) * shape.r_outer).ceil() as i32 + 2,
    };
    core + 2 * margin(core.max(2))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub mode: IsoMode,
    pub n: usize,
    pub epsilon: f64,
    pub set: CandidateSet,
    /// Final scale `R` after any shrinking.
    pub scale: f64,
    pub rescales: usize,
    pub circuit: CurveToCircuitReport,
    pub host_size: usize,
    pub theta: f64,
    /// `U ⊆ vol(γ)` and, in Cheeger mode, `vol(γ) ⊆ B∞(n)`.
    pub inclusion: bool,
    /// Admissible volume range: `[½(1−√ε)|host|, ½|host|]` in Cheeger mode,
    /// `[(1−√ε)n, n]` for the profile.
    pub volume_window: (f64, f64),
    pub in_window: bool,
    /// `(1+ε)·len_β(∂(RŴ))/|U|`.
    pub ratio_bound: f64,
    pub ratio_ok: bool,
}

/// Connected component of `anchor` inside `u` through open edges.
fn component_of(u: &HashSet<Site>, anchor: Site, cfg: &Configuration) -> HashSet<Site> {
    let mut seen = HashSet::from([anchor]);
    let mut q = VecDeque::from([anchor]);
    while let Some(v) = q.pop_front() {
        for w in cfg.open_neighbors(v) {
            if u.contains(&w) && seen.insert(w) {
                q.push_back(w);
            }
        }
    }
    seen
}

/// The Wulff-shape upper-bound candidate: a circuit following `∂(RŴ)`
/// whose enclosed cluster points form `U`. In Cheeger mode `U` is
/// `vol(γ) ∩ C^n`; in profile mode it is the component of the origin's
/// anchor in `vol(γ) ∩ C∞`. When `U` exceeds its volume cap, `R` shrinks by
/// [`SHRINK`] and the construction is repeated.
pub fn wulff_candidate(
    cfg: &Configuration,
    labeling: &ClusterLabeling,
    n: usize,
    eps: f64,
    shape: &WulffShape,
    mode: IsoMode,
) -> Result<CandidateReport> {
    if n == 0 {
        return Err(domain("n must be positive"));
    }
    let host = match mode {
        IsoMode::Cheeger => Host::core(cfg, n as i32)?,
        IsoMode::Profile => Host::proxy(cfg, labeling),
    };
    if host.size() == 0 {
        return Err(Error::NoCluster);
    }
    let theta = match mode {
        IsoMode::Cheeger => host.size() as f64 / ((2 * n + 1) * (2 * n + 1)) as f64,
        IsoMode::Profile => giant_density(labeling),
    };
    let (cap, window) = match mode {
        IsoMode::Cheeger => {
            let half = host.size() as f64 / 2.0;
            (half.floor() as usize, ((1.0 - eps.sqrt()) * half, half))
        }
        IsoMode::Profile => (n, ((1.0 - eps.sqrt()) * n as f64, n as f64)),
    };
    let origin = match mode {
        IsoMode::Profile => Some(anchor_site(Site::ORIGIN, labeling)?),
        IsoMode::Cheeger => None,
    };
    // The circuit follows a thinned copy of ∂Ŵ, rescaled back to unit area
    // so that the volume law `Leb(RŴ) = R²` still holds.
    let thinned = Curve::closed(thin_polygon(&Curve::closed(shape.normalized.vertices().to_vec())?, CANDIDATE_SIDES))?;
    let boundary = thinned.scaled(1.0 / thinned.signed_area().sqrt());
    let copts = CurveToCircuitOptions { piece_len: Some(f64::INFINITY), max_sides: CANDIDATE_SIDES };
    let mut scale = candidate_scale(mode, n, eps, theta);
    for rescales in 0..=MAX_RESCALES {
        let (gamma, circuit) =
            curve_to_circuit(&boundary, scale, eps, cfg, labeling, &shape.norm, &copts)?;
        let region = vol(&gamma)?;
        let inside: HashSet<Site> = region.sites.iter().copied().filter(|&s| host.contains(s)).collect();
        let u = match origin {
            Some(a) if inside.contains(&a) => component_of(&inside, a, cfg),
            Some(_) => HashSet::new(),
            None => inside,
        };
        if u.is_empty() && origin.is_some() {
            return Err(Error::Degenerate("candidate circuit does not enclose the origin's anchor".into()));
        }
        if u.len() > cap {
            scale *= SHRINK;
            continue;
        }
        let set = CandidateSet::from_sites(u.iter().copied(), &host)?;
        let inclusion = u.iter().all(|s| region.contains(*s))
            && match mode {
                IsoMode::Cheeger => region.sites.iter().all(|s| s.norm_inf() <= n as i32),
                IsoMode::Profile => true,
            };
        let vol_u = set.volume() as f64;
        let ratio_bound = (1.0 + eps) * shape.phi * scale / vol_u;
        return Ok(CandidateReport {
            mode,
            n,
            epsilon: eps,
            in_window: vol_u >= window.0 && vol_u <= window.1,
            ratio_ok: set.ratio <= ratio_bound,
            set,
            scale,
            rescales,
            circuit,
            host_size: host.size(),
            theta,
            inclusion,
            volume_window: window,
            ratio_bound,
        });
    }
    Err(Error::Budget { budget: MAX_RESCALES as u64, context: "candidate rescaling did not meet the volume cap".into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::percolation::label_clusters;
    use crate::wulff::{build_wulff, NormHandle};

    fn run(mode: IsoMode, n: usize) -> CandidateReport {
        let shape = build_wulff(&NormHandle::L1, 8).unwrap();
        let cfg = Configuration::full(candidate_box_radius(mode, n, &shape, 1.0)).unwrap();
        let l = label_clusters(&cfg);
        wulff_candidate(&cfg, &l, n, CANDIDATE_EPSILON, &shape, mode).unwrap()
    }

    #[test]
    fn cheeger_scaling_at_p_one() {
        let target = 2.0 * 2f64.sqrt();
        let r = run(IsoMode::Cheeger, 32);
        let scaled = 32.0 * r.set.ratio;
        assert!((scaled / target - 1.0).abs() < 0.15, "{scaled}");
        assert!(r.inclusion && r.set.volume() <= r.host_size / 2);
    }

    #[test]
    fn profile_scaling_at_p_one() {
        let r = run(IsoMode::Profile, 900);
        let scaled = (r.set.volume() as f64).sqrt() * r.set.ratio;
        assert!((scaled / 4.0 - 1.0).abs() < 0.15, "{scaled}");
        assert!(r.set.volume() <= 900 && r.set.connected);
    }

    #[test]
    fn modes_parse() {
        assert_eq!("cheeger".parse::<IsoMode>().unwrap(), IsoMode::Cheeger);
        assert!("free".parse::<IsoMode>().is_err());
    }
}
