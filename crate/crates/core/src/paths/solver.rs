//! Solvers for `b(x,y)` and `b̂(x,y)`.
//!
//! A shortest-path relaxation over states "last directed edge taken" gives a
//! lower bound: each transition pays for the boundary edges swept at the
//! pivot vertex, but the relaxation forgets which edges earlier steps used.
//! When its optimal walk happens to be right-most the bound is attained and
//! the answer is certified. Otherwise a branch-and-bound search over genuine
//! right-most paths, guided by the reverse relaxation as an admissible
//! heuristic, finds the exact optimum.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::path::{boundary_open, h, is_open_path, is_rightmost, path_costs, traversal_closed, LatticePath};
use super::walker::{orientation_bit, EdgeIndexer, Walker};
use crate::error::{domain, Error, Result};
use crate::lattice::{right_boundary_dirs, Direction, EdgeKey, Site};
use crate::percolation::{ClusterLabeling, Configuration};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverStatus {
    /// Computed by exhaustive enumeration.
    ExactOracle,
    /// The relaxation optimum was right-most, so it is optimal.
    SearchValidated,
    /// The relaxation optimum was not right-most; branch and bound found the optimum.
    SearchFallback,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub value: f64,
    pub witness: LatticePath,
    pub status: SolverStatus,
    /// Value of the relaxation, a certified lower bound.
    pub lower_bound: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Node budget of the branch-and-bound fallback.
    pub fallback_budget: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { fallback_budget: 20_000_000 }
    }
}

/// Which functional is minimised.
#[derive(Clone, Copy)]
enum Objective {
    B,
    BHat { penalty: f64 },
}

struct Model<'a> {
    cfg: &'a Configuration,
    idx: EdgeIndexer,
    objective: Objective,
}

impl<'a> Model<'a> {
    fn new(cfg: &'a Configuration, objective: Objective) -> Self {
        Model { cfg, idx: EdgeIndexer { center: cfg.center, radius: cfg.radius }, objective }
    }

    fn traversable(&self, k: EdgeKey) -> bool {
        match self.objective {
            Objective::B => self.cfg.is_open(k),
            Objective::BHat { .. } => self.cfg.contains_edge(k),
        }
    }

    fn step_cost(&self, k: EdgeKey) -> f64 {
        match self.objective {
            Objective::B => 0.0,
            Objective::BHat { penalty } => {
                if traversal_closed(self.cfg, k) {
                    penalty
                } else {
                    0.0
                }
            }
        }
    }

    fn turn_cost(&self, v: Site, back: Direction, fwd: Direction) -> f64 {
        right_boundary_dirs(back, fwd)
            .filter(|&q| boundary_open(self.cfg, EdgeKey::between(v, v.step(q)).unwrap()))
            .count() as f64
    }

    /// State index of the directed edge `from --d-->`.
    fn state(&self, from: Site, d: Direction) -> Option<usize> {
        let k = EdgeKey::between(from, from.step(d)).unwrap();
        let ki = self.idx.index(k)?;
        Some(2 * ki + (orientation_bit(d) as usize - 1))
    }

    fn state_edge(&self, s: usize) -> (Site, Direction) {
        let k = self.idx.key(s / 2);
        let (a, b) = k.endpoints();
        if s.is_multiple_of(2) {
            (a, k.positive_dir())
        } else {
            (b, k.positive_dir().reverse())
        }
    }

    fn state_count(&self) -> usize {
        2 * self.idx.count()
    }
}

#[derive(PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Entry {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then_with(|| o.1.cmp(&self.1))
    }
}

/// Forward relaxation from `x`; returns the best goal state and predecessor
/// links.
fn relax_forward(m: &Model<'_>, x: Site, y: Site) -> Option<(f64, usize, Vec<usize>)> {
    let n = m.state_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![usize::MAX; n];
    let mut heap = BinaryHeap::new();
    for d in Direction::ALL {
        let k = EdgeKey::between(x, x.step(d)).unwrap();
        if let Some(s) = m.state(x, d) {
            if m.traversable(k) {
                let c = m.step_cost(k);
                if c < dist[s] {
                    dist[s] = c;
                    heap.push(Entry(c, s));
                }
            }
        }
    }
    while let Some(Entry(c, s)) = heap.pop() {
        if c > dist[s] {
            continue;
        }
        let (from, d) = m.state_edge(s);
        let v = from.step(d);
        if v == y {
            return Some((c, s, pred));
        }
        let back = d.reverse();
        for e in Direction::ALL {
            let k = EdgeKey::between(v, v.step(e)).unwrap();
            let Some(t) = m.state(v, e) else { continue };
            if !m.traversable(k) {
                continue;
            }
            let nc = c + m.turn_cost(v, back, e) + m.step_cost(k);
            if nc < dist[t] {
                dist[t] = nc;
                pred[t] = s;
                heap.push(Entry(nc, t));
            }
        }
    }
    None
}

/// Relaxed cost-to-go from every state to `y`.
fn relax_backward(m: &Model<'_>, y: Site) -> Vec<f64> {
    let n = m.state_count();
    let mut g = vec![f64::INFINITY; n];
    let mut heap = BinaryHeap::new();
    for d in Direction::ALL {
        let u = y.step(d);
        let k = EdgeKey::between(u, y).unwrap();
        if let Some(s) = m.state(u, d.reverse()) {
            if m.traversable(k) {
                g[s] = 0.0;
                heap.push(Entry(0.0, s));
            }
        }
    }
    while let Some(Entry(c, t)) = heap.pop() {
        if c > g[t] {
            continue;
        }
        // t = (v -> w); predecessors are s = (u -> v).
        let (v, e) = m.state_edge(t);
        let kt = EdgeKey::between(v, v.step(e)).unwrap();
        for d in Direction::ALL {
            let u = v.step(d);
            let Some(s) = m.state(u, d.reverse()) else { continue };
            let ks = EdgeKey::between(u, v).unwrap();
            if !m.traversable(ks) || v == y {
                continue;
            }
            let nc = c + m.turn_cost(v, d, e) + m.step_cost(kt);
            if nc < g[s] {
                g[s] = nc;
                heap.push(Entry(nc, s));
            }
        }
    }
    g
}

fn reconstruct(m: &Model<'_>, x: Site, goal: usize, pred: &[usize]) -> LatticePath {
    let mut states = vec![goal];
    let mut s = goal;
    while pred[s] != usize::MAX {
        s = pred[s];
        states.push(s);
    }
    states.reverse();
    let mut v = vec![x];
    for s in states {
        let (from, d) = m.state_edge(s);
        v.push(from.step(d));
    }
    LatticePath::new(v).expect("relaxation walks are adjacent")
}

/// Exact branch and bound over right-most paths.
fn branch_and_bound(m: &Model<'_>, x: Site, y: Site, lower: f64, budget: u64) -> Result<Option<(f64, LatticePath)>> {
    let g = relax_backward(m, y);
    let trav = (0..m.idx.count()).map(|i| m.traversable(m.idx.key(i))).collect();
    let mut w = Walker::new(m.idx, trav, x);
    let mut best: Option<(f64, Vec<Site>)> = None;
    let mut bound = f64::INFINITY;
    let mut nodes = 0u64;
    const TOL: f64 = 1e-9;

    #[allow(clippy::too_many_arguments)]
    fn rec(
        m: &Model<'_>,
        g: &[f64],
        w: &mut Walker,
        y: Site,
        lower: f64,
        cost: f64,
        bound: &mut f64,
        best: &mut Option<(f64, Vec<Site>)>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::Budget { budget, context: "right-most branch and bound".into() });
        }
        let v = w.current();
        if v == y && w.len() > 0 {
            if cost < *bound - TOL {
                *bound = cost;
                *best = Some((cost, w.verts.clone()));
            }
            return Ok(*bound <= lower + TOL);
        }
        let mut children: Vec<(f64, f64, Direction)> = Vec::with_capacity(4);
        for d in Direction::ALL {
            let Some(t) = m.state(v, d) else { continue };
            let k = EdgeKey::between(v, v.step(d)).unwrap();
            if !m.traversable(k) || !g[t].is_finite() {
                continue;
            }
            let turn = w.back().map_or(0.0, |b| m.turn_cost(v, b, d));
            let c = cost + turn + m.step_cost(k);
            let est = c + g[t];
            if est < *bound - TOL {
                children.push((est, c, d));
            }
        }
        children.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));
        for (est, c, d) in children {
            if est >= *bound - TOL {
                break;
            }
            if let Some(u) = w.try_step(d) {
                let done = rec(m, g, w, y, lower, c, bound, best, nodes, budget);
                w.undo(u);
                if done? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
    rec(m, &g, &mut w, y, lower, 0.0, &mut bound, &mut best, &mut nodes, budget)?;
    Ok(best.map(|(c, v)| (c, LatticePath::new(v).unwrap())))
}

fn solve(m: &Model<'_>, x: Site, y: Site, opts: SolverOptions) -> Result<Option<DistanceResult>> {
    if !m.cfg.contains(x) || !m.cfg.contains(y) {
        return Err(domain(format!("endpoints {x:?}, {y:?} must lie in the box")));
    }
    if x == y {
        return Ok(Some(DistanceResult {
            value: 0.0,
            witness: LatticePath::trivial(x),
            status: SolverStatus::SearchValidated,
            lower_bound: 0.0,
        }));
    }
    let Some((lb, goal, pred)) = relax_forward(m, x, y) else { return Ok(None) };
    let walk = reconstruct(m, x, goal, &pred);
    if is_rightmost(&walk) {
        return Ok(Some(DistanceResult { value: lb, witness: walk, status: SolverStatus::SearchValidated, lower_bound: lb }));
    }
    let found = branch_and_bound(m, x, y, lb, opts.fallback_budget)?;
    Ok(found.map(|(value, witness)| DistanceResult {
        value,
        witness,
        status: SolverStatus::SearchFallback,
        lower_bound: lb,
    }))
}

/// `b(x,y)`: the fewest open right-boundary edges over open right-most paths.
pub fn solve_b(x: Site, y: Site, labeling: &ClusterLabeling, cfg: &Configuration) -> Result<DistanceResult> {
    solve_b_with(x, y, labeling, cfg, SolverOptions::default())
}

pub fn solve_b_with(
    x: Site,
    y: Site,
    labeling: &ClusterLabeling,
    cfg: &Configuration,
    opts: SolverOptions,
) -> Result<DistanceResult> {
    let disconnected = || Error::Disconnected { from: (x.x, x.y), to: (y.x, y.y) };
    match (labeling.label(x), labeling.label(y)) {
        (Some(a), Some(b)) if a == b => {}
        (Some(_), Some(_)) => return Err(disconnected()),
        _ => return Err(domain(format!("endpoints {x:?}, {y:?} must lie in the box"))),
    }
    let m = Model::new(cfg, Objective::B);
    let r = solve(&m, x, y, opts)?.ok_or_else(disconnected)?;
    debug_assert!(is_open_path(&r.witness, cfg));
    debug_assert_eq!(path_costs(&r.witness, cfg).map(|c| c.b as f64).ok(), Some(r.value));
    Ok(r)
}

/// `b̂(x,y)`: closed edges may be used at penalty `h(‖y−x‖∞)` each.
pub fn solve_bhat(x: Site, y: Site, cfg: &Configuration) -> Result<DistanceResult> {
    solve_bhat_with(x, y, cfg, SolverOptions::default())
}

pub fn solve_bhat_with(x: Site, y: Site, cfg: &Configuration, opts: SolverOptions) -> Result<DistanceResult> {
    let m = Model::new(cfg, Objective::BHat { penalty: h(x.dist_inf(y) as f64) });
    solve(&m, x, y, opts)?.ok_or(Error::Disconnected { from: (x.x, x.y), to: (y.x, y.y) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::enumerate::{exhaustive_b, exhaustive_bhat};
    use crate::percolation::label_clusters;

    #[test]
    fn straight_line_at_p_one() {
        let cfg = Configuration::sample(1.0, 8, 0).unwrap();
        let l = label_clusters(&cfg);
        for n in 1..=5 {
            let r = solve_b(Site::ORIGIN, Site::new(n, 0), &l, &cfg).unwrap();
            assert_eq!(r.value, (n - 1) as f64);
        }
        let r = solve_b(Site::new(2, 2), Site::new(2, 2), &l, &cfg).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.witness.len(), 0);
    }

    #[test]
    fn diagonal_at_p_one() {
        let cfg = Configuration::sample(1.0, 20, 0).unwrap();
        let l = label_clusters(&cfg);
        let r = solve_b(Site::ORIGIN, Site::new(8, 8), &l, &cfg).unwrap();
        assert_eq!(r.value, 14.0);
    }

    #[test]
    fn matches_oracle_on_small_boxes() {
        for seed in 0..30 {
            for &p in &[0.6, 0.8] {
                let cfg = Configuration::sample(p, 3, seed).unwrap();
                let l = label_clusters(&cfg);
                let sites: Vec<_> = cfg.sites().collect();
                for (i, &x) in sites.iter().enumerate().step_by(5) {
                    for &y in sites.iter().skip(i).step_by(3) {
                        if x.dist_inf(y) > 4 {
                            continue;
                        }
                        match solve_b(x, y, &l, &cfg) {
                            Ok(r) => {
                                let ub = path_costs(&r.witness, &cfg).unwrap().b;
                                let (o, _) = exhaustive_b(x, y, &cfg, Some(ub), 100_000_000).unwrap().unwrap();
                                assert_eq!(r.value as u32, o, "{x:?} {y:?} seed {seed}");
                                assert!(is_rightmost(&r.witness));
                            }
                            Err(Error::Disconnected { .. }) => assert_ne!(l.label(x), l.label(y)),
                            Err(e) => panic!("{e}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bhat_matches_oracle() {
        for seed in 0..10 {
            let cfg = Configuration::sample(0.5, 3, seed).unwrap();
            for (x, y) in [(Site::new(-2, -1), Site::new(1, 2)), (Site::ORIGIN, Site::new(3, 0)), (Site::new(2, 2), Site::new(-1, -2))] {
                let r = solve_bhat(x, y, &cfg).unwrap();
                let (o, _) = exhaustive_bhat(x, y, &cfg, None, 100_000_000).unwrap().unwrap();
                assert!((r.value - o).abs() < 1e-9, "seed {seed}: {} vs {o}", r.value);
                assert!((path_costs(&r.witness, &cfg).unwrap().bhat - r.value).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn disconnected_pairs_error() {
        let cfg = Configuration::sample(0.0, 3, 0).unwrap();
        let l = label_clusters(&cfg);
        assert!(matches!(solve_b(Site::ORIGIN, Site::new(1, 0), &l, &cfg), Err(Error::Disconnected { .. })));
    }
}
