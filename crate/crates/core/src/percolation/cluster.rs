use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

use super::Configuration;
use crate::error::{domain, precondition, Error, Result};
use crate::lattice::{Direction, EdgeKey, Site};
use crate::rng;

/// The safe margin `⌈ln² N⌉` kept between measurements and the box boundary.
pub fn margin(radius: i32) -> i32 {
    if radius <= 1 {
        return 0;
    }
    let l = (radius as f64).ln();
    (l * l).ceil() as i32
}

/// Radius of the region where measurements are trusted.
pub fn safe_radius(radius: i32) -> i32 {
    radius - margin(radius)
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut a: u32) -> u32 {
        while self.parent[a as usize] != a {
            let gp = self.parent[self.parent[a as usize] as usize];
            self.parent[a as usize] = gp;
            a = gp;
        }
        a
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] { (ra, rb) } else { (rb, ra) };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
    }
}

/// Open clusters of a configuration.
///
/// Labels are assigned in row-major order of each cluster's first site, so
/// label 0 always contains the bottom-left corner.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClusterLabeling {
    pub radius: i32,
    pub center: Site,
    pub seed: u64,
    labels: Vec<u32>,
    pub sizes: Vec<u32>,
    pub giant: u32,
    eta: Vec<f64>,
}

pub fn label_clusters(cfg: &Configuration) -> ClusterLabeling {
    let n = cfg.site_count();
    let mut uf = UnionFind::new(n);
    for k in cfg.edges() {
        if cfg.is_open(k) {
            let (a, b) = k.endpoints();
            let (ia, ib) = (cfg.site_index(a).unwrap(), cfg.site_index(b).unwrap());
            uf.union(ia as u32, ib as u32);
        }
    }
    let mut root_label = vec![u32::MAX; n];
    let mut labels = vec![0u32; n];
    let mut sizes: Vec<u32> = Vec::new();
    for (i, label) in labels.iter_mut().enumerate() {
        let r = uf.find(i as u32) as usize;
        if root_label[r] == u32::MAX {
            root_label[r] = sizes.len() as u32;
            sizes.push(0);
        }
        *label = root_label[r];
        sizes[root_label[r] as usize] += 1;
    }
    let mut giant = 0u32;
    for (l, &s) in sizes.iter().enumerate() {
        if s > sizes[giant as usize] {
            giant = l as u32;
        }
    }
    let eta = cfg
        .sites()
        .map(|s| rng::uniform(cfg.seed, rng::tag::ETA, rng::site_key(s.x, s.y)))
        .collect();
    ClusterLabeling { radius: cfg.radius, center: cfg.center, seed: cfg.seed, labels, sizes, giant, eta }
}

impl ClusterLabeling {
    fn index(&self, s: Site) -> Option<usize> {
        let l = s - self.center;
        if l.norm_inf() > self.radius {
            return None;
        }
        let n = self.radius;
        Some(((l.y + n) * (2 * n + 1) + (l.x + n)) as usize)
    }

    fn site_at(&self, i: usize) -> Site {
        let side = 2 * self.radius + 1;
        let i = i as i32;
        Site::new(i % side - self.radius + self.center.x, i / side - self.radius + self.center.y)
    }

    pub fn label(&self, s: Site) -> Option<u32> {
        self.index(s).map(|i| self.labels[i])
    }

    pub fn eta(&self, s: Site) -> Option<f64> {
        self.index(s).map(|i| self.eta[i])
    }

    pub fn in_giant(&self, s: Site) -> bool {
        self.label(s) == Some(self.giant)
    }

    pub fn giant_size(&self) -> usize {
        self.sizes[self.giant as usize] as usize
    }

    pub fn cluster_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn sites_with_label(&self, label: u32) -> Vec<Site> {
        (0..self.labels.len()).filter(|&i| self.labels[i] == label).map(|i| self.site_at(i)).collect()
    }

    pub fn giant_sites(&self) -> Vec<Site> {
        self.sites_with_label(self.giant)
    }

    pub fn safe_radius(&self) -> i32 {
        safe_radius(self.radius)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnchorResult {
    pub query: (f64, f64),
    pub anchor: Site,
    /// ℓ∞ distance from the query to the anchor.
    pub distance: f64,
}

/// `[x]`: the proxy-cluster site ℓ∞-nearest to `x`, ties broken by minimal η.
pub fn anchor(x: (f64, f64), labeling: &ClusterLabeling) -> Result<AnchorResult> {
    if labeling.sizes.is_empty() {
        return Err(Error::NoCluster);
    }
    let safe = labeling.safe_radius();
    let rel = (x.0 - labeling.center.x as f64, x.1 - labeling.center.y as f64);
    if !(rel.0.abs() <= safe as f64 && rel.1.abs() <= safe as f64) {
        return Err(Error::OutOfMargin { x: x.0, y: x.1, safe });
    }
    let dist = |s: Site| (s.x as f64 - x.0).abs().max((s.y as f64 - x.1).abs());
    let c = Site::new(x.0.round() as i32, x.1.round() as i32);
    let mut best: Option<(f64, f64, Site)> = None;
    let max_ring = 2 * labeling.radius + 2;
    for ring in 0..=max_ring {
        // Every site on a farther ring is at least `ring - 1/2` away.
        if let Some((d, _, _)) = best {
            if (ring as f64) - 0.5 > d + 1e-12 {
                break;
            }
        }
        for s in ring_sites(c, ring) {
            if !labeling.in_giant(s) {
                continue;
            }
            let d = dist(s);
            let e = labeling.eta(s).unwrap();
            let better = match best {
                None => true,
                Some((bd, be, _)) => d < bd - 1e-12 || ((d - bd).abs() <= 1e-12 && e < be),
            };
            if better {
                best = Some((d, e, s));
            }
        }
    }
    let (distance, _, anchor) = best.ok_or(Error::NoCluster)?;
    Ok(AnchorResult { query: x, anchor, distance })
}

/// Anchor of a lattice point.
pub fn anchor_site(s: Site, labeling: &ClusterLabeling) -> Result<Site> {
    anchor(s.to_f64(), labeling).map(|a| a.anchor)
}

fn ring_sites(c: Site, r: i32) -> Vec<Site> {
    if r == 0 {
        return vec![c];
    }
    let mut v = Vec::with_capacity(8 * r as usize);
    for x in -r..=r {
        v.push(Site::new(c.x + x, c.y - r));
        v.push(Site::new(c.x + x, c.y + r));
    }
    for y in -r + 1..r {
        v.push(Site::new(c.x - r, c.y + y));
        v.push(Site::new(c.x + r, c.y + y));
    }
    v
}

/// Length of the shortest open path from `x` to `y` inside the box, or `None`
/// when they are not connected.
pub fn chemical_distance(cfg: &Configuration, x: Site, y: Site) -> Option<u32> {
    let (ix, iy) = (cfg.site_index(x)?, cfg.site_index(y)?);
    if ix == iy {
        return Some(0);
    }
    let mut dist = vec![u32::MAX; cfg.site_count()];
    dist[ix] = 0;
    let mut q = VecDeque::from([x]);
    while let Some(s) = q.pop_front() {
        let ds = dist[cfg.site_index(s).unwrap()];
        for t in cfg.open_neighbors(s) {
            let it = cfg.site_index(t).unwrap();
            if dist[it] == u32::MAX {
                dist[it] = ds + 1;
                if it == iy {
                    return Some(ds + 1);
                }
                q.push_back(t);
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Agreement {
    pub agree: bool,
    pub mismatches: usize,
}

/// Compares the giant of the sub-box `B∞(n)` with the proxy cluster (the giant
/// of the whole configuration) on `B∞(n')`.
pub fn core_box_agreement(cfg: &Configuration, n: i32, n_prime: i32) -> Result<Agreement> {
    if cfg.radius <= n {
        return Err(precondition(format!(
            "enclosing radius {} must exceed n = {n}",
            cfg.radius
        )));
    }
    if n_prime > n - margin(n) || n_prime < 0 {
        return Err(precondition(format!("n' = {n_prime} must be at most n - margin = {}", n - margin(n))));
    }
    let proxy = label_clusters(cfg);
    let inner_cfg = cfg.restrict(n)?;
    let inner = label_clusters(&inner_cfg);
    let c = cfg.center;
    let mut mismatches = 0;
    for y in -n_prime..=n_prime {
        for x in -n_prime..=n_prime {
            let s = Site::new(c.x + x, c.y + y);
            if proxy.in_giant(s) != inner.in_giant(s) {
                mismatches += 1;
            }
        }
    }
    Ok(Agreement { agree: mismatches == 0, mismatches })
}

/// Fraction of `region` covered by the proxy cluster.
pub fn cluster_density(labeling: &ClusterLabeling, region: &[Site]) -> Result<f64> {
    if region.is_empty() {
        return Err(domain("empty region"));
    }
    let hits = region.iter().filter(|&&s| labeling.in_giant(s)).count();
    Ok(hits as f64 / region.len() as f64)
}

/// Sites of the box `center + B∞(r)`, row-major.
pub fn box_sites(center: Site, r: i32) -> Vec<Site> {
    let mut v = Vec::with_capacity(((2 * r + 1) * (2 * r + 1)) as usize);
    for y in -r..=r {
        for x in -r..=r {
            v.push(Site::new(center.x + x, center.y + y));
        }
    }
    v
}

/// Giant density over the safe region `B∞(N - margin)`.
pub fn giant_density(labeling: &ClusterLabeling) -> f64 {
    let r = labeling.safe_radius().max(0);
    cluster_density(labeling, &box_sites(labeling.center, r)).expect("nonempty")
}

/// Neighbours of `s` joined to it by an open edge of `cfg`, as edge keys.
pub fn open_edges_at(cfg: &Configuration, s: Site) -> impl Iterator<Item = EdgeKey> + '_ {
    Direction::ALL.into_iter().filter_map(move |d| {
        let k = EdgeKey::between(s, s.step(d)).unwrap();
        cfg.is_open(k).then_some(k)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes() {
        let l = label_clusters(&Configuration::sample(1.0, 4, 0).unwrap());
        assert_eq!(l.cluster_count(), 1);
        assert_eq!(l.giant_size(), 81);
        let l = label_clusters(&Configuration::sample(0.0, 4, 0).unwrap());
        assert_eq!(l.cluster_count(), 81);
        assert_eq!(l.giant, 0);
    }

    #[test]
    fn labels_match_connectivity() {
        let cfg = Configuration::sample(0.5, 8, 4).unwrap();
        let l = label_clusters(&cfg);
        let sites: Vec<Site> = cfg.sites().collect();
        for &a in sites.iter().step_by(7) {
            for &b in sites.iter().step_by(11) {
                let connected = chemical_distance(&cfg, a, b).is_some();
                assert_eq!(connected, l.label(a) == l.label(b));
            }
        }
    }

    #[test]
    fn anchor_examples() {
        let l = label_clusters(&Configuration::sample(1.0, 20, 0).unwrap());
        let a = anchor((3.0, 3.0), &l).unwrap();
        assert_eq!(a.anchor, Site::new(3, 3));
        assert_eq!(a.distance, 0.0);
        assert!(matches!(anchor((19.0, 0.0), &l), Err(Error::OutOfMargin { .. })));
    }

    #[test]
    fn anchor_tie_uses_eta() {
        let l = label_clusters(&Configuration::sample(1.0, 20, 7).unwrap());
        let a = anchor((0.5, 0.0), &l).unwrap();
        let (e0, e1) = (l.eta(Site::new(0, 0)).unwrap(), l.eta(Site::new(1, 0)).unwrap());
        let want = if e0 < e1 { Site::new(0, 0) } else { Site::new(1, 0) };
        assert_eq!(a.anchor, want);
        assert_eq!(a.distance, 0.5);
    }

    #[test]
    fn chemical_distance_full_lattice() {
        let cfg = Configuration::sample(1.0, 6, 0).unwrap();
        assert_eq!(chemical_distance(&cfg, Site::new(-3, 2), Site::new(4, -1)), Some(10));
        assert_eq!(chemical_distance(&cfg, Site::new(1, 1), Site::new(1, 1)), Some(0));
        let closed = Configuration::sample(0.0, 6, 0).unwrap();
        assert_eq!(chemical_distance(&closed, Site::new(0, 0), Site::new(1, 0)), None);
    }

    #[test]
    fn agreement_at_p_one_and_margin_error() {
        let cfg = Configuration::sample(1.0, 30, 0).unwrap();
        let n = 20;
        assert!(core_box_agreement(&cfg, n, n - margin(n)).unwrap().agree);
        assert!(core_box_agreement(&cfg, n, n).is_err());
        assert!(core_box_agreement(&cfg, 30, 10).is_err());
    }

    #[test]
    fn density_is_weighted_mean() {
        let cfg = Configuration::sample(0.6, 15, 3).unwrap();
        let l = label_clusters(&cfg);
        let r1 = box_sites(Site::new(-5, 0), 3);
        let r2 = box_sites(Site::new(6, 2), 2);
        let d1 = cluster_density(&l, &r1).unwrap();
        let d2 = cluster_density(&l, &r2).unwrap();
        let mut all = r1.clone();
        all.extend(&r2);
        let d = cluster_density(&l, &all).unwrap();
        let w = (d1 * r1.len() as f64 + d2 * r2.len() as f64) / all.len() as f64;
        assert!((d - w).abs() < 1e-12);
        assert!(cluster_density(&l, &[]).is_err());
    }
}
