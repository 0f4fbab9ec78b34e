use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::lattice::{Direction, EdgeKey, Site};
use crate::percolation::{label_clusters, margin, ClusterLabeling, Configuration};

/// Which vertex set a candidate lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HostTag {
    /// The giant cluster of the whole sampled box, standing in for C∞.
    Proxy,
    /// The giant cluster of the core box `B∞(n)`.
    Core { n: i32 },
}

/// A host graph: a set of sites with the open edges of the configuration.
/// Edge boundaries are always measured with every open edge of the sampled
/// box, so that boundary edges leaving the core box still count.
#[derive(Clone, Debug)]
pub struct Host<'a> {
    pub cfg: &'a Configuration,
    pub tag: HostTag,
    members: Vec<bool>,
    size: usize,
}

/// Radius of the sampled box used around a core box of radius `n`.
pub fn host_box_radius(n: i32) -> i32 {
    n + 2 * margin(n.max(2))
}

impl<'a> Host<'a> {
    /// The giant cluster of the sampled box.
    pub fn proxy(cfg: &'a Configuration, labeling: &ClusterLabeling) -> Self {
        let members: Vec<bool> = cfg.sites().map(|s| labeling.in_giant(s)).collect();
        let size = members.iter().filter(|&&m| m).count();
        Host { cfg, tag: HostTag::Proxy, members, size }
    }

    /// The giant cluster of `B∞(n)` around the box center.
    pub fn core(cfg: &'a Configuration, n: i32) -> Result<Self> {
        if n > cfg.radius || n < 0 {
            return Err(domain(format!("core radius {n} does not fit the box of radius {}", cfg.radius)));
        }
        let inner = cfg.restrict(n)?;
        let l = label_clusters(&inner);
        let members: Vec<bool> = cfg.sites().map(|s| inner.contains(s) && l.in_giant(s)).collect();
        let size = members.iter().filter(|&&m| m).count();
        Ok(Host { cfg, tag: HostTag::Core { n }, members, size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, s: Site) -> bool {
        self.cfg.site_index(s).is_some_and(|i| self.members[i])
    }

    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        self.cfg.sites().filter(move |&s| self.contains(s))
    }

    /// Host neighbours of `s` through open edges.
    pub fn neighbors(&self, s: Site) -> impl Iterator<Item = Site> + '_ {
        self.cfg.open_neighbors(s).filter(move |&w| self.contains(w))
    }

    /// Open edges of the sampled box at `s`.
    pub fn degree(&self, s: Site) -> usize {
        self.cfg.open_neighbors(s).count()
    }
}

/// Open edges with exactly one endpoint in `u`.
pub fn boundary_of(u: &HashSet<Site>, host: &Host<'_>) -> Result<BTreeSet<EdgeKey>> {
    if let Some(s) = u.iter().find(|&&s| !host.contains(s)) {
        return Err(domain(format!("site {s:?} is not in the host")));
    }
    let mut out = BTreeSet::new();
    for &s in u {
        for d in Direction::ALL {
            let w = s.step(d);
            let k = EdgeKey::between(s, w).unwrap();
            if host.cfg.edge_state(k) == Some(true) && !u.contains(&w) {
                out.insert(k);
            }
        }
    }
    Ok(out)
}

/// Whether `u` is connected through open edges between its own sites.
pub fn is_connected(u: &HashSet<Site>, cfg: &Configuration) -> bool {
    let Some(&start) = u.iter().next() else { return true };
    let mut seen = HashSet::from([start]);
    let mut q = VecDeque::from([start]);
    while let Some(v) = q.pop_front() {
        for w in cfg.open_neighbors(v) {
            if u.contains(&w) && seen.insert(w) {
                q.push_back(w);
            }
        }
    }
    seen.len() == u.len()
}

/// A candidate minimizer with its boundary in the sampled box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateSet {
    pub sites: Vec<Site>,
    pub host: HostTag,
    pub boundary: usize,
    pub ratio: f64,
    pub connected: bool,
    pub warnings: Vec<String>,
}

impl CandidateSet {
    pub fn from_sites(sites: impl IntoIterator<Item = Site>, host: &Host<'_>) -> Result<Self> {
        let u: HashSet<Site> = sites.into_iter().collect();
        if u.is_empty() {
            return Err(domain("candidate set is empty"));
        }
        let boundary = boundary_of(&u, host)?.len();
        let mut sites: Vec<Site> = u.iter().copied().collect();
        sites.sort();
        Ok(CandidateSet {
            ratio: boundary as f64 / sites.len() as f64,
            connected: is_connected(&u, host.cfg),
            sites,
            host: host.tag,
            boundary,
            warnings: Vec::new(),
        })
    }

    pub fn volume(&self) -> usize {
        self.sites.len()
    }

    pub fn site_set(&self) -> HashSet<Site> {
        self.sites.iter().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_boundary_at_p_one() {
        let cfg = Configuration::full(6).unwrap();
        let l = label_clusters(&cfg);
        let h = Host::proxy(&cfg, &l);
        let u: HashSet<Site> = [(0, 0), (1, 0), (0, 1), (1, 1)].iter().map(|&(x, y)| Site::new(x, y)).collect();
        assert_eq!(boundary_of(&u, &h).unwrap().len(), 8);
        let one: HashSet<Site> = [Site::ORIGIN].into();
        assert_eq!(boundary_of(&one, &h).unwrap().len(), 4);
    }

    #[test]
    fn whole_finite_cluster_has_no_boundary() {
        let cfg = Configuration::sample(0.7, 6, 3).unwrap();
        let l = label_clusters(&cfg);
        let h = Host::proxy(&cfg, &l);
        let all: HashSet<Site> = h.sites().collect();
        assert!(boundary_of(&all, &h).unwrap().is_empty());
    }

    #[test]
    fn core_host_is_inside_the_core() {
        let cfg = Configuration::full(5).unwrap();
        let h = Host::core(&cfg, 2).unwrap();
        assert_eq!(h.size(), 25);
        assert!(!h.contains(Site::new(3, 0)));
    }
}
