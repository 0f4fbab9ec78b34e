//! Interfaces: walks on the medial graph that shadow a right-most path on its
//! right side, reflecting on path edges and cutting through boundary edges.

use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use super::path::{is_rightmost, right_boundary, LatticePath};
use crate::error::{domain, Result};
use crate::lattice::{dual_of, right_boundary_dirs, DirectedEdge, EdgeKey, Site};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VisitTag {
    Reflect,
    Cut,
}

/// One medial vertex visited by an interface.
///
/// Reflect visits carry the path edge oriented along the path. Cut visits
/// carry the boundary edge oriented away from the vertex the interface is
/// turning around, which is left-to-right as seen by the interface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InterfaceVisit {
    pub edge: DirectedEdge,
    pub tag: VisitTag,
}

impl InterfaceVisit {
    pub fn key(&self) -> EdgeKey {
        self.edge.key()
    }

    /// The vertex the interface turns around right after this visit.
    fn pivot_after(&self) -> Site {
        match self.tag {
            VisitTag::Reflect => self.edge.head(),
            VisitTag::Cut => self.edge.from,
        }
    }

    /// Direction of this visit's edge as seen from [`Self::pivot_after`].
    fn dir_from_pivot(&self) -> crate::lattice::Direction {
        match self.tag {
            VisitTag::Reflect => self.edge.dir.reverse(),
            VisitTag::Cut => self.edge.dir,
        }
    }

    /// Whether `next` can follow `self` along one medial edge.
    pub fn can_precede(&self, next: &InterfaceVisit) -> bool {
        next.edge.from == self.pivot_after() && next.edge.dir == self.dir_from_pivot().ccw_next()
    }

    /// The medial edge from `self` to `next`, as an ordered pair of keys.
    fn medial_edge(&self, next: &InterfaceVisit) -> (EdgeKey, EdgeKey) {
        (self.key(), next.key())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interface {
    pub visits: Vec<InterfaceVisit>,
    pub cyclic: bool,
}

impl Interface {
    pub fn reflect_count(&self) -> usize {
        self.visits.iter().filter(|v| v.tag == VisitTag::Reflect).count()
    }

    pub fn cut_count(&self) -> usize {
        self.visits.len() - self.reflect_count()
    }

    /// The same interface read on the dual lattice: visits reversed, tags
    /// swapped, edges replaced by their duals (faces stored as integer sites).
    /// Open interfaces lose their dangling end cuts.
    pub fn dual(&self) -> Interface {
        let visits = self
            .visits
            .iter()
            .rev()
            .map(|v| match v.tag {
                VisitTag::Cut => InterfaceVisit { edge: dual_of(v.edge).as_dual_directed(), tag: VisitTag::Reflect },
                VisitTag::Reflect => {
                    InterfaceVisit { edge: dual_of(v.edge.reverse()).as_dual_directed(), tag: VisitTag::Cut }
                }
            })
            .collect::<Vec<_>>();
        let mut out = Interface { visits, cyclic: self.cyclic };
        if out.cyclic {
            if let Some(i) = out.visits.iter().position(|v| v.tag == VisitTag::Reflect) {
                out.visits.rotate_left(i);
            }
        } else {
            // The first and last primal edges become dangling cuts; the dual
            // path's own interface starts and ends on a reflection.
            while out.visits.last().is_some_and(|v| v.tag == VisitTag::Cut) {
                out.visits.pop();
            }
            let lead = out.visits.iter().take_while(|v| v.tag == VisitTag::Cut).count();
            out.visits.drain(..lead);
        }
        out
    }

    /// Polygon through the medial points of the visits: cut visits at edge
    /// midpoints, reflect visits pushed a quarter unit to the right of their
    /// edge, into the face the interface runs through.
    pub fn polygon(&self) -> Vec<(f64, f64)> {
        self.visits
            .iter()
            .map(|v| {
                let (mx, my) = v.key().midpoint();
                match v.tag {
                    VisitTag::Cut => (mx, my),
                    VisitTag::Reflect => {
                        let (dx, dy) = v.edge.dir.cw_next().unit();
                        (mx + 0.25 * dx as f64, my + 0.25 * dy as f64)
                    }
                }
            })
            .collect()
    }
}

pub fn to_interface(path: &LatticePath) -> Result<Interface> {
    if path.is_empty() {
        return Err(domain("a path of length zero has no interface"));
    }
    if !is_rightmost(path) {
        return Err(domain("interfaces exist for right-most paths only"));
    }
    let v = path.vertices();
    let n = path.len();
    let mut visits = Vec::with_capacity(4 * n);
    let cuts_at = |i: usize, back_to: Site, fwd_to: Site, visits: &mut Vec<InterfaceVisit>| {
        let at = v[i];
        let (b, f) = (at.direction_to(back_to).unwrap(), at.direction_to(fwd_to).unwrap());
        for d in right_boundary_dirs(b, f) {
            visits.push(InterfaceVisit { edge: DirectedEdge::new(at, d), tag: VisitTag::Cut });
        }
    };
    for i in 0..n {
        if i > 0 {
            cuts_at(i, v[i - 1], v[i + 1], &mut visits);
        }
        visits.push(InterfaceVisit { edge: DirectedEdge::between(v[i], v[i + 1]).unwrap(), tag: VisitTag::Reflect });
    }
    let cyclic = path.is_circuit();
    if cyclic {
        cuts_at(0, v[n - 1], v[1], &mut visits);
    }
    Ok(Interface { visits, cyclic })
}

/// Checks the local medial structure of an interface: consecutive visits are
/// medially adjacent and no medial edge is used twice.
pub fn is_medial_walk(iface: &Interface) -> bool {
    let vs = &iface.visits;
    if vs.is_empty() {
        return false;
    }
    let mut seen = HashSet::new();
    let pairs = vs.len() - 1 + usize::from(iface.cyclic);
    for i in 0..pairs {
        let (a, b) = (&vs[i], &vs[(i + 1) % vs.len()]);
        if !a.can_precede(b) || !seen.insert(a.medial_edge(b)) {
            return false;
        }
    }
    true
}

/// Inverse of [`to_interface`]: the reflected edges, in order, form the path.
pub fn from_interface(iface: &Interface) -> Result<LatticePath> {
    if !is_medial_walk(iface) {
        return Err(domain("not an edge-self-avoiding medial walk"));
    }
    let vs = &iface.visits;
    if vs[0].tag != VisitTag::Reflect {
        return Err(domain("an interface starts by reflecting on the first path edge"));
    }
    if !iface.cyclic && vs.last().unwrap().tag != VisitTag::Reflect {
        return Err(domain("an open interface ends by reflecting on the last path edge"));
    }
    let mut vertices = vec![vs[0].edge.from];
    for v in vs.iter().filter(|v| v.tag == VisitTag::Reflect) {
        vertices.push(v.edge.head());
    }
    let path = LatticePath::new(vertices)?;
    if path.is_circuit() != iface.cyclic {
        return Err(domain("cyclic interfaces correspond exactly to circuits"));
    }
    if !is_rightmost(&path) || to_interface(&path)? != *iface {
        return Err(domain("interface does not shadow a right-most path"));
    }
    Ok(path)
}

/// The dual right-most path formed by the duals of the right boundary, on the
/// dual lattice with faces stored as integer sites.
pub fn dual_path(path: &LatticePath) -> Result<LatticePath> {
    if !is_rightmost(path) {
        return Err(domain("dual paths exist for right-most paths only"));
    }
    let rb = right_boundary(path);
    if rb.is_empty() {
        return Err(domain("empty right boundary gives no dual path"));
    }
    let duals: Vec<DirectedEdge> = rb.edges.iter().rev().map(|&e| dual_of(e).as_dual_directed()).collect();
    let mut vertices = vec![duals[0].from];
    for e in &duals {
        if e.from != *vertices.last().unwrap() {
            return Err(domain("dual boundary edges do not chain"));
        }
        vertices.push(e.head());
    }
    LatticePath::new(vertices)
}
