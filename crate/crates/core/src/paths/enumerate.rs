//! Exhaustive enumeration of right-most paths, and the brute-force distance
//! oracles built on it. These are the reference implementations the solvers
//! are tested against; they favour obviousness over speed.

use super::path::{boundary_open, h, traversal_closed, LatticePath};
use super::walker::{EdgeIndexer, Walker};
use crate::error::{domain, Error, Result};
use crate::lattice::{right_boundary_dirs, Direction, EdgeKey, Site};
use crate::percolation::Configuration;
use crate::rng::Stream;

/// Where an enumeration may walk.
#[derive(Clone, Copy, Debug)]
pub enum Scope<'a> {
    /// The whole lattice. Walks are confined to `B∞(start, maxlen)`.
    Lattice,
    /// The box of a configuration, optionally through open edges only.
    Config { cfg: &'a Configuration, open_only: bool },
}

fn walker_for(start: Site, maxlen: usize, scope: Scope<'_>) -> Result<Walker> {
    match scope {
        Scope::Lattice => {
            let idx = EdgeIndexer { center: start, radius: maxlen.max(1) as i32 };
            Ok(Walker::new(idx, vec![true; idx.count()], start))
        }
        Scope::Config { cfg, open_only } => {
            if !cfg.contains(start) {
                return Err(domain(format!("start {start:?} is outside the box")));
            }
            let idx = EdgeIndexer { center: cfg.center, radius: cfg.radius };
            let trav = (0..idx.count()).map(|i| !open_only || cfg.is_open(idx.key(i))).collect();
            Ok(Walker::new(idx, trav, start))
        }
    }
}

fn budget_error(budget: u64, what: &str) -> Error {
    Error::Budget { budget, context: what.to_string() }
}

/// Calls `visit` on every right-most path from `x` with at most `maxlen`
/// steps (the trivial path included), each exactly once.
pub fn for_each_rightmost(
    x: Site,
    maxlen: usize,
    scope: Scope<'_>,
    budget: u64,
    mut visit: impl FnMut(&LatticePath),
) -> Result<u64> {
    let mut w = walker_for(x, maxlen, scope)?;
    let mut nodes = 0u64;
    fn rec(
        w: &mut Walker,
        maxlen: usize,
        nodes: &mut u64,
        budget: u64,
        visit: &mut dyn FnMut(&LatticePath),
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > budget {
            return Err(budget_error(budget, "right-most path enumeration"));
        }
        let closed = w.len() > 0 && w.current() == w.verts[0];
        if !closed || w.closes_as_circuit() {
            visit(&LatticePath::new(w.verts.clone()).expect("walker paths are adjacent"));
        }
        if w.len() == maxlen {
            return Ok(());
        }
        for d in Direction::ALL {
            if let Some(u) = w.try_step(d) {
                let r = rec(w, maxlen, nodes, budget, visit);
                w.undo(u);
                r?;
            }
        }
        Ok(())
    }
    rec(&mut w, maxlen, &mut nodes, budget, &mut visit)?;
    Ok(nodes)
}

/// Every right-most path from `x` to `y` of length at most `maxlen`.
///
/// Without a configuration the walk ranges over the whole lattice.
pub fn enumerate_rightmost(
    x: Site,
    y: Site,
    maxlen: usize,
    cfg: Option<&Configuration>,
    open_only: bool,
    budget: u64,
) -> Result<Vec<LatticePath>> {
    let scope = match cfg {
        Some(cfg) => Scope::Config { cfg, open_only },
        None => Scope::Lattice,
    };
    let mut out = Vec::new();
    for_each_rightmost(x, maxlen, scope, budget, |p| {
        if p.end() == y {
            out.push(p.clone());
        }
    })?;
    Ok(out)
}

/// Minimum of `b` over open right-most paths from `x` to `y` inside the box,
/// by depth-first search pruned only on accumulated cost.
///
/// `upper` may seed the pruning bound with the cost of any known open
/// right-most path; the result is still the exact minimum. Returns `None`
/// when `y` is unreachable.
pub fn exhaustive_b(
    x: Site,
    y: Site,
    cfg: &Configuration,
    upper: Option<u32>,
    budget: u64,
) -> Result<Option<(u32, LatticePath)>> {
    if x == y {
        return Ok(Some((0, LatticePath::trivial(x))));
    }
    let mut w = walker_for(x, 0, Scope::Config { cfg, open_only: true })?;
    let mut best: Option<(u32, Vec<Site>)> = None;
    let mut bound = upper.unwrap_or(u32::MAX);
    let mut nodes = 0u64;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        w: &mut Walker,
        cfg: &Configuration,
        y: Site,
        cost: u32,
        bound: &mut u32,
        best: &mut Option<(u32, Vec<Site>)>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > budget {
            return Err(budget_error(budget, "exhaustive b oracle"));
        }
        if w.current() == y {
            if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                *best = Some((cost, w.verts.clone()));
                *bound = cost;
            }
            return Ok(());
        }
        let v = w.current();
        for d in Direction::ALL {
            let extra = match w.back() {
                Some(back) => right_boundary_dirs(back, d)
                    .filter(|&q| boundary_open(cfg, EdgeKey::between(v, v.step(q)).unwrap()))
                    .count() as u32,
                None => 0,
            };
            let c = cost + extra;
            // Equal-cost paths cannot improve a recorded witness, but must be
            // explored while only an external bound is known.
            if c > *bound || (best.is_some() && c >= *bound) {
                continue;
            }
            if let Some(u) = w.try_step(d) {
                let r = rec(w, cfg, y, c, bound, best, nodes, budget);
                w.undo(u);
                r?;
            }
        }
        Ok(())
    }
    rec(&mut w, cfg, y, 0, &mut bound, &mut best, &mut nodes, budget)?;
    Ok(best.map(|(c, v)| (c, LatticePath::new(v).unwrap())))
}

/// Minimum of `b̂` over right-most paths from `x` to `y` inside the box.
pub fn exhaustive_bhat(
    x: Site,
    y: Site,
    cfg: &Configuration,
    upper: Option<f64>,
    budget: u64,
) -> Result<Option<(f64, LatticePath)>> {
    if x == y {
        return Ok(Some((0.0, LatticePath::trivial(x))));
    }
    let pen = h(x.dist_inf(y) as f64);
    let mut w = walker_for(x, 0, Scope::Config { cfg, open_only: false })?;
    let mut best: Option<(f64, Vec<Site>)> = None;
    let mut bound = upper.map(|u| u + 1e-9).unwrap_or(f64::INFINITY);
    let mut nodes = 0u64;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        w: &mut Walker,
        cfg: &Configuration,
        y: Site,
        pen: f64,
        cost: f64,
        bound: &mut f64,
        best: &mut Option<(f64, Vec<Site>)>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > budget {
            return Err(budget_error(budget, "exhaustive b-hat oracle"));
        }
        if w.current() == y {
            if best.as_ref().is_none_or(|(c, _)| cost < *c - 1e-9) {
                *best = Some((cost, w.verts.clone()));
                *bound = cost;
            }
            return Ok(());
        }
        let v = w.current();
        for d in Direction::ALL {
            let k = EdgeKey::between(v, v.step(d)).unwrap();
            let mut c = cost + if traversal_closed(cfg, k) { pen } else { 0.0 };
            if let Some(back) = w.back() {
                c += right_boundary_dirs(back, d)
                    .filter(|&q| boundary_open(cfg, EdgeKey::between(v, v.step(q)).unwrap()))
                    .count() as f64;
            }
            if c > *bound || (best.is_some() && c >= *bound - 1e-9) {
                continue;
            }
            if let Some(u) = w.try_step(d) {
                let r = rec(w, cfg, y, pen, c, bound, best, nodes, budget);
                w.undo(u);
                r?;
            }
        }
        Ok(())
    }
    rec(&mut w, cfg, y, pen, 0.0, &mut bound, &mut best, &mut nodes, budget)?;
    Ok(best.map(|(c, v)| (c, LatticePath::new(v).unwrap())))
}

/// A random right-most path from `x` inside `B∞(center, radius)`.
///
/// The walk draws a target length uniformly from `0..=maxlen` and takes
/// uniformly random admissible steps, stopping early when stuck. It never
/// steps back onto `x`, so the result is not closed.
pub fn random_rightmost(x: Site, center: Site, radius: i32, maxlen: usize, rng: &mut Stream) -> Result<LatticePath> {
    if x.dist_inf(center) > radius {
        return Err(domain(format!("start {x:?} is outside the box")));
    }
    let idx = EdgeIndexer { center, radius };
    let mut w = Walker::new(idx, vec![true; idx.count()], x);
    let target = rng.below(maxlen as u64 + 1) as usize;
    while w.len() < target {
        let v = w.current();
        let mut options = Vec::with_capacity(4);
        for d in Direction::ALL {
            if v.step(d) == x {
                continue;
            }
            if let Some(u) = w.try_step(d) {
                w.undo(u);
                options.push(d);
            }
        }
        if options.is_empty() {
            break;
        }
        let d = options[rng.below(options.len() as u64) as usize];
        w.try_step(d);
    }
    LatticePath::new(w.verts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::path::{is_rightmost, path_costs};

    const BUDGET: u64 = 50_000_000;

    #[test]
    fn trivial_and_single_step() {
        let o = Site::ORIGIN;
        assert_eq!(enumerate_rightmost(o, o, 0, None, false, BUDGET).unwrap(), vec![LatticePath::trivial(o)]);
        assert_eq!(enumerate_rightmost(o, Site::new(1, 0), 1, None, false, BUDGET).unwrap().len(), 1);
    }

    /// Independent enumerator: every walk of the given length, filtered.
    fn brute_force(x: Site, y: Site, maxlen: usize) -> usize {
        let mut count = 0;
        let mut stack = vec![vec![]];
        while let Some(steps) = stack.pop() {
            let p = LatticePath::from_steps(x, &steps);
            if p.end() == y && is_rightmost(&p) {
                count += 1;
            }
            if steps.len() < maxlen {
                for d in Direction::ALL {
                    let mut s = steps.clone();
                    s.push(d);
                    stack.push(s);
                }
            }
        }
        count
    }

    #[test]
    fn counts_match_brute_force() {
        for (y, l) in [(Site::new(2, 0), 4), (Site::new(1, 1), 5), (Site::ORIGIN, 6), (Site::new(0, -1), 6)] {
            let fast = enumerate_rightmost(Site::ORIGIN, y, l, None, false, BUDGET).unwrap();
            assert_eq!(fast.len(), brute_force(Site::ORIGIN, y, l), "target {y:?}");
            assert!(fast.iter().all(is_rightmost));
        }
    }

    #[test]
    fn budget_is_a_hard_error() {
        let r = enumerate_rightmost(Site::ORIGIN, Site::new(1, 0), 8, None, false, 100);
        assert!(matches!(r, Err(Error::Budget { .. })));
    }

    #[test]
    fn straight_b_at_p_one() {
        let cfg = Configuration::sample(1.0, 6, 0).unwrap();
        for n in 1..=5 {
            let (b, w) = exhaustive_b(Site::ORIGIN, Site::new(n, 0), &cfg, None, BUDGET).unwrap().unwrap();
            assert_eq!(b, n as u32 - 1);
            assert_eq!(path_costs(&w, &cfg).unwrap().b, b);
        }
    }

    #[test]
    fn bhat_at_p_zero() {
        let cfg = Configuration::sample(0.0, 6, 0).unwrap();
        for n in 1..=4 {
            let (v, w) = exhaustive_bhat(Site::ORIGIN, Site::new(n, 0), &cfg, None, BUDGET).unwrap().unwrap();
            assert!((v - n as f64 * h(n as f64)).abs() < 1e-9, "n={n} v={v}");
            assert!((path_costs(&w, &cfg).unwrap().bhat - v).abs() < 1e-9);
        }
    }
}
