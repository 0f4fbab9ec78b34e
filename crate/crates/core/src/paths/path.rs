use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use crate::error::{domain, Result};
use crate::lattice::{right_boundary_dirs, DirectedEdge, Direction, EdgeKey, Site};
use crate::percolation::Configuration;

/// A nearest-neighbour walk on Z².
///
/// A walk of positive length whose last vertex equals its first is a
/// circuit; its indices wrap, so the starting vertex also carries right
/// boundary edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePath {
    vertices: Vec<Site>,
}

impl LatticePath {
    pub fn new(vertices: Vec<Site>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(domain("a path needs at least one vertex"));
        }
        for (i, w) in vertices.windows(2).enumerate() {
            if !w[0].is_adjacent(w[1]) {
                return Err(domain(format!(
                    "malformed path: steps {} and {} ({:?}, {:?}) are not adjacent",
                    i,
                    i + 1,
                    w[0],
                    w[1]
                )));
            }
        }
        Ok(LatticePath { vertices })
    }

    pub fn trivial(x: Site) -> Self {
        LatticePath { vertices: vec![x] }
    }

    /// Builds a path from a start site and a list of steps.
    pub fn from_steps(start: Site, steps: &[Direction]) -> Self {
        let mut v = Vec::with_capacity(steps.len() + 1);
        v.push(start);
        let mut cur = start;
        for &d in steps {
            cur = cur.step(d);
            v.push(cur);
        }
        LatticePath { vertices: v }
    }

    /// Straight path between two sites sharing a row or column.
    pub fn straight(a: Site, b: Site) -> Result<Self> {
        if a.x != b.x && a.y != b.y {
            return Err(domain("straight paths need aligned endpoints"));
        }
        let n = a.dist_l1(b);
        let mut v = vec![a];
        let (sx, sy) = ((b.x - a.x).signum(), (b.y - a.y).signum());
        for i in 1..=n {
            v.push(Site::new(a.x + sx * i, a.y + sy * i));
        }
        Ok(LatticePath { vertices: v })
    }

    pub fn vertices(&self) -> &[Site] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Site> {
        self.vertices
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self) -> Site {
        self.vertices[0]
    }

    pub fn end(&self) -> Site {
        *self.vertices.last().unwrap()
    }

    pub fn is_circuit(&self) -> bool {
        !self.is_empty() && self.start() == self.end()
    }

    pub fn steps(&self) -> impl Iterator<Item = DirectedEdge> + '_ {
        self.vertices.windows(2).map(|w| DirectedEdge::between(w[0], w[1]).unwrap())
    }

    pub fn translated(&self, z: Site) -> Self {
        LatticePath { vertices: self.vertices.iter().map(|&v| v + z).collect() }
    }

    /// The path traversed backwards.
    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        LatticePath { vertices: v }
    }
}

/// Boundary edges at every vertex that has one, in traversal order.
///
/// Each entry is `(vertex index, back direction, forward direction)`.
fn turns(path: &LatticePath) -> Vec<(usize, Direction, Direction)> {
    let v = path.vertices();
    let n = path.len();
    let mut out = Vec::with_capacity(n);
    for i in 1..n {
        let back = v[i].direction_to(v[i - 1]).unwrap();
        let fwd = v[i].direction_to(v[i + 1]).unwrap();
        out.push((i, back, fwd));
    }
    if path.is_circuit() {
        let back = v[0].direction_to(v[n - 1]).unwrap();
        let fwd = v[0].direction_to(v[1]).unwrap();
        out.push((n, back, fwd));
    }
    out
}

/// The right boundary, with multiplicity and orientation, grouped by vertex in
/// traversal order. For circuits the starting vertex comes last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RightBoundary {
    pub edges: Vec<DirectedEdge>,
}

impl RightBoundary {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

pub fn right_boundary(path: &LatticePath) -> RightBoundary {
    let v = path.vertices();
    let mut edges = Vec::new();
    for (i, back, fwd) in turns(path) {
        let at = v[i];
        edges.extend(right_boundary_dirs(back, fwd).map(|d| DirectedEdge::new(at, d)));
    }
    RightBoundary { edges }
}

/// Directed-edge-simple and never traversing an edge of its own right boundary.
pub fn is_rightmost(path: &LatticePath) -> bool {
    let mut directed = HashSet::with_capacity(path.len());
    let mut keys = HashSet::with_capacity(path.len());
    for e in path.steps() {
        if !directed.insert(e) {
            return false;
        }
        keys.insert(e.key());
    }
    right_boundary(path).edges.iter().all(|e| !keys.contains(&e.key()))
}

/// `h(t) = max(ln⁴ t, 1)`, equal to 1 for `t ≤ e`.
pub fn h(t: f64) -> f64 {
    if t <= std::f64::consts::E {
        1.0
    } else {
        t.ln().powi(4).max(1.0)
    }
}

/// Edge state for cost purposes: edges outside the sampled box count as open
/// boundary edges, and paths may not use them.
pub(crate) fn boundary_open(cfg: &Configuration, k: EdgeKey) -> bool {
    cfg.edge_state(k).unwrap_or(true)
}

pub(crate) fn traversal_closed(cfg: &Configuration, k: EdgeKey) -> bool {
    !cfg.edge_state(k).unwrap_or(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathCosts {
    /// Open right-boundary edges, each orientation counted.
    pub b: u32,
    /// Closed (or out-of-box) traversed edges, each orientation counted.
    pub pclosed: u32,
    pub bhat: f64,
}

pub fn path_costs(path: &LatticePath, cfg: &Configuration) -> Result<PathCosts> {
    if !is_rightmost(path) {
        return Err(domain("path costs are defined for right-most paths only"));
    }
    let b = right_boundary(path).edges.iter().filter(|e| boundary_open(cfg, e.key())).count() as u32;
    let pclosed = path.steps().filter(|e| traversal_closed(cfg, e.key())).count() as u32;
    let t = path.start().dist_inf(path.end()) as f64;
    Ok(PathCosts { b, pclosed, bhat: b as f64 + h(t) * pclosed as f64 })
}

/// True when every step of the path is an open edge of `cfg`.
pub fn is_open_path(path: &LatticePath, cfg: &Configuration) -> bool {
    path.steps().all(|e| cfg.is_open(e.key()))
}

/// The ∗-concatenation: follow `a` until it first meets `b`, then continue
/// along `b` from the last visit of that vertex.
pub fn star_concat(a: &LatticePath, b: &LatticePath) -> Result<LatticePath> {
    if a.end() != b.start() {
        return Err(domain(format!(
            "cannot concatenate: first path ends at {:?}, second starts at {:?}",
            a.end(),
            b.start()
        )));
    }
    let in_b: HashSet<Site> = b.vertices().iter().copied().collect();
    let k = a.vertices().iter().position(|v| in_b.contains(v)).expect("shared endpoint");
    let u = a.vertices()[k];
    let l = b.vertices().iter().rposition(|&v| v == u).unwrap();
    let mut v = a.vertices()[..=k].to_vec();
    v.extend_from_slice(&b.vertices()[l + 1..]);
    Ok(LatticePath { vertices: v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Direction::*;

    fn p(v: &[(i32, i32)]) -> LatticePath {
        LatticePath::new(v.iter().map(|&(x, y)| Site::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn straight_boundary_points_south() {
        let g = LatticePath::straight(Site::ORIGIN, Site::new(5, 0)).unwrap();
        let rb = right_boundary(&g);
        assert_eq!(rb.len(), 4);
        assert!(rb.edges.iter().all(|e| e.dir == S));
        assert!(is_rightmost(&g));
        assert!(right_boundary(&p(&[(0, 0), (1, 0)])).is_empty());
    }

    #[test]
    fn unit_square_circuit() {
        let g = p(&[(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)]);
        assert!(g.is_circuit());
        let rb = right_boundary(&g);
        assert_eq!(rb.len(), 8);
        assert!(is_rightmost(&g));
        for e in &rb.edges {
            let h = e.head();
            assert!(!(0..=1).contains(&h.x) || !(0..=1).contains(&h.y));
        }
    }

    #[test]
    fn backtrack_is_rightmost() {
        let g = p(&[(0, 0), (1, 0), (0, 0)]);
        let rb = right_boundary(&g);
        let at_one: Vec<_> = rb.edges.iter().filter(|e| e.from == Site::new(1, 0)).map(|e| e.dir).collect();
        assert_eq!(at_one, vec![S, E, N]);
        assert!(is_rightmost(&g));
    }

    #[test]
    fn traversing_own_boundary_is_rejected() {
        // Returning to the start from the south sweeps over the first edge.
        let bad = p(&[(0, 0), (1, 0), (1, -1), (0, -1), (0, 0), (-1, 0)]);
        assert!(!is_rightmost(&bad));
        let repeated = p(&[(0, 0), (1, 0), (1, 1), (0, 1), (0, 0), (1, 0)]);
        assert!(!is_rightmost(&repeated));
    }

    #[test]
    fn costs_extremes() {
        let full = Configuration::sample(1.0, 10, 0).unwrap();
        let g = LatticePath::straight(Site::ORIGIN, Site::new(6, 0)).unwrap();
        let c = path_costs(&g, &full).unwrap();
        assert_eq!((c.b, c.pclosed), (5, 0));
        assert_eq!(c.bhat, 5.0);
        let empty = Configuration::sample(0.0, 10, 0).unwrap();
        let c = path_costs(&g, &empty).unwrap();
        assert_eq!((c.b, c.pclosed), (0, 6));
        assert!((c.bhat - 6.0 * h(6.0)).abs() < 1e-12);
    }

    #[test]
    fn doubly_oriented_boundary_edge_counts_twice() {
        // Brute force: find a right-most path whose boundary holds an edge in
        // both orientations and check that b counts it twice.
        let full = Configuration::sample(1.0, 6, 0).unwrap();
        let mut found = false;
        let dirs = [E, N, W, S];
        let mut stack = vec![vec![]];
        while let Some(steps) = stack.pop() {
            let path = LatticePath::from_steps(Site::ORIGIN, &steps);
            if !is_rightmost(&path) {
                continue;
            }
            let rb = right_boundary(&path);
            let keys: Vec<_> = rb.edges.iter().map(|e| e.key()).collect();
            let mut sorted = keys.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() < keys.len() {
                let c = path_costs(&path, &full).unwrap();
                assert_eq!(c.b as usize, rb.len());
                found = true;
                break;
            }
            if steps.len() < 7 {
                for d in dirs {
                    let mut s = steps.clone();
                    s.push(d);
                    stack.push(s);
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn h_values() {
        assert_eq!(h(1.0), 1.0);
        assert_eq!(h(2.0), 1.0);
        assert!((h(100.0) - 100f64.ln().powi(4)).abs() < 1e-9);
    }

    #[test]
    fn star_concat_examples() {
        let a = p(&[(0, 0), (1, 0)]);
        let b = p(&[(1, 0), (1, 1)]);
        assert_eq!(star_concat(&a, &b).unwrap(), p(&[(0, 0), (1, 0), (1, 1)]));
        let back = p(&[(1, 0), (0, 0)]);
        assert_eq!(star_concat(&a, &back).unwrap(), LatticePath::trivial(Site::ORIGIN));
        assert!(star_concat(&a, &a).is_err());
    }
}
