//! Exhaustive minimization over connected subsets.
//!
//! Connected sets are enumerated with the extension-set scheme: each set is
//! generated exactly once, from its smallest-ranked site, by adding sites
//! from the exclusive neighbourhood of the newest site only.

use std::cmp::Ordering;

use super::host::{CandidateSet, Host};
use crate::error::{domain, Error, Result};
use crate::lattice::Site;
use crate::percolation::{ClusterLabeling, Configuration};

/// Default enumeration budget, in search nodes.
pub const ENUMERATION_BUDGET: u64 = 200_000_000;

struct Search<'a> {
    adj: Vec<Vec<usize>>,
    degree: Vec<i64>,
    rank: Vec<usize>,
    sites: &'a [Site],
    cap: usize,
    budget: u64,
    nodes: u64,
    in_set: Vec<bool>,
    touching: Vec<u32>,
    members: Vec<usize>,
    best: Option<(i64, usize, Vec<Site>)>,
}

impl Search<'_> {
    /// Whether `(b, s)` beats the incumbent: smaller ratio, then larger set,
    /// then the lexicographically smaller sorted site list.
    fn consider(&mut self, boundary: i64) {
        let s = self.members.len();
        let ord = match &self.best {
            None => Ordering::Less,
            Some((bb, bs, bv)) => (boundary * *bs as i64).cmp(&(*bb * s as i64)).then(bs.cmp(&s)).then_with(|| {
                let mut v: Vec<Site> = self.members.iter().map(|&i| self.sites[i]).collect();
                v.sort();
                v.cmp(bv)
            }),
        };
        if ord == Ordering::Less {
            let mut v: Vec<Site> = self.members.iter().map(|&i| self.sites[i]).collect();
            v.sort();
            self.best = Some((boundary, s, v));
        }
    }

    fn add(&mut self, w: usize) -> i64 {
        let delta = self.degree[w] - 2 * self.touching[w] as i64;
        self.in_set[w] = true;
        self.members.push(w);
        for &u in &self.adj[w] {
            self.touching[u] += 1;
        }
        delta
    }

    fn remove(&mut self, w: usize) {
        self.in_set[w] = false;
        self.members.pop();
        for &u in &self.adj[w] {
            self.touching[u] -= 1;
        }
    }

    fn extend(&mut self, root: usize, boundary: i64, ext: Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget {
                budget: self.budget,
                context: "connected-subset enumeration; use the Wulff candidate for larger instances".into(),
            });
        }
        self.consider(boundary);
        if self.members.len() == self.cap {
            return Ok(());
        }
        let mut ext = ext;
        while let Some(w) = ext.pop() {
            // Exclusive neighbours of w: outside the set and not yet adjacent to it.
            let mut next = ext.clone();
            for &u in &self.adj[w] {
                if self.rank[u] > self.rank[root] && !self.in_set[u] && self.touching[u] == 0 && !ext.contains(&u) {
                    next.push(u);
                }
            }
            let d = self.add(w);
            let r = self.extend(root, boundary + d, next);
            self.remove(w);
            r?;
        }
        Ok(())
    }
}

fn run(host: &Host<'_>, roots: &[Site], cap: usize, budget: u64, rank_first: Option<Site>) -> Result<CandidateSet> {
    let sites: Vec<Site> = host.sites().collect();
    let index: std::collections::HashMap<Site, usize> = sites.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let adj: Vec<Vec<usize>> = sites.iter().map(|&s| host.neighbors(s).map(|w| index[&w]).collect()).collect();
    let degree: Vec<i64> = sites.iter().map(|&s| host.degree(s) as i64).collect();
    let mut rank: Vec<usize> = (1..=sites.len()).collect();
    if let Some(a) = rank_first {
        rank[index[&a]] = 0;
    }
    let n = sites.len();
    let mut search = Search {
        adj,
        degree,
        rank,
        sites: &sites,
        cap,
        budget,
        nodes: 0,
        in_set: vec![false; n],
        touching: vec![0; n],
        members: Vec::new(),
        best: None,
    };
    for r in roots {
        let v = index[r];
        let d = search.add(v);
        let ext: Vec<usize> = search.adj[v].iter().copied().filter(|&u| search.rank[u] > search.rank[v]).collect();
        let res = search.extend(v, d, ext);
        search.remove(v);
        res?;
    }
    let (_, _, best) = search.best.ok_or_else(|| domain("host is empty"))?;
    CandidateSet::from_sites(best, host)
}

/// Exact minimizer of `|∂U|/|U|` over connected `U` in the core giant of
/// `B∞(n)` with `|U| ≤ |host|/2`, boundaries counted in the whole box.
pub fn cheeger_exact(cfg: &Configuration, n: i32, budget: u64) -> Result<CandidateSet> {
    let host = Host::core(cfg, n)?;
    if host.size() == 0 {
        return Err(Error::NoCluster);
    }
    let mut cap = host.size() / 2;
    let mut warnings = Vec::new();
    if cap == 0 {
        cap = 1;
        warnings.push(format!("degenerate host of {} site(s): allowing |U| = 1", host.size()));
    }
    let roots: Vec<Site> = host.sites().collect();
    let mut c = run(&host, &roots, cap, budget, None)?;
    c.warnings = warnings;
    Ok(c)
}

/// Exact anchored profile: the best connected `U ∋ anchor` in the proxy
/// giant with `|U| ≤ r`.
pub fn profile_exact(cfg: &Configuration, labeling: &ClusterLabeling, anchor: Site, r: usize, budget: u64) -> Result<CandidateSet> {
    if r == 0 {
        return Err(domain("volume bound must be positive"));
    }
    let host = Host::proxy(cfg, labeling);
    if !host.contains(anchor) {
        return Err(domain(format!("anchor {anchor:?} is not in the giant cluster")));
    }
    run(&host, &[anchor], r, budget, Some(anchor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::host::host_box_radius;
    use crate::percolation::label_clusters;
    use std::collections::HashSet;

    #[test]
    fn cheeger_at_p_one() {
        let cfg = Configuration::full(host_box_radius(1)).unwrap();
        let c = cheeger_exact(&cfg, 1, ENUMERATION_BUDGET).unwrap();
        assert_eq!((c.boundary, c.volume()), (8, 4));
        let cfg = Configuration::full(host_box_radius(2)).unwrap();
        let c = cheeger_exact(&cfg, 2, ENUMERATION_BUDGET).unwrap();
        assert_eq!((c.boundary, c.volume()), (14, 12));
    }

    #[test]
    fn profile_at_p_one() {
        let cfg = Configuration::full(8).unwrap();
        let l = label_clusters(&cfg);
        let c = profile_exact(&cfg, &l, Site::ORIGIN, 9, ENUMERATION_BUDGET).unwrap();
        assert_eq!((c.boundary, c.volume()), (12, 9));
        let c = profile_exact(&cfg, &l, Site::ORIGIN, 4, ENUMERATION_BUDGET).unwrap();
        assert_eq!(c.ratio, 2.0);
        let c = profile_exact(&cfg, &l, Site::ORIGIN, 1, ENUMERATION_BUDGET).unwrap();
        assert_eq!(c.ratio, 4.0);
    }

    #[test]
    fn degenerate_host() {
        let cfg = Configuration::sample(0.0, 4, 0).unwrap();
        let c = cheeger_exact(&cfg, 1, ENUMERATION_BUDGET).unwrap();
        assert_eq!(c.ratio, 0.0);
        assert!(!c.warnings.is_empty());
    }

    /// Brute force over all subsets of a small host.
    #[test]
    fn matches_brute_force() {
        for seed in 0..6 {
            let cfg = Configuration::sample(0.75, 4, seed).unwrap();
            let host = Host::core(&cfg, 1).unwrap();
            let sites: Vec<Site> = host.sites().collect();
            let cap = (sites.len() / 2).max(1);
            let mut best = f64::INFINITY;
            for mask in 1u32..(1 << sites.len()) {
                let u: HashSet<Site> = (0..sites.len()).filter(|i| mask >> i & 1 == 1).map(|i| sites[i]).collect();
                if u.len() > cap || !crate::iso::host::is_connected(&u, &cfg) {
                    continue;
                }
                let b = crate::iso::host::boundary_of(&u, &host).unwrap().len();
                best = best.min(b as f64 / u.len() as f64);
            }
            let c = cheeger_exact(&cfg, 1, ENUMERATION_BUDGET).unwrap();
            assert_eq!(c.ratio, best, "seed {seed}");
        }
    }

    #[test]
    fn budget_is_reported() {
        let cfg = Configuration::full(host_box_radius(2)).unwrap();
        assert!(matches!(cheeger_exact(&cfg, 2, 1000), Err(Error::Budget { .. })));
    }
}
