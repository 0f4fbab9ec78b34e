use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::base::Curve;
use crate::error::{domain, Error, Result};
use crate::geom::{self, bounding_box, Point, Prepared};
use crate::lattice::{Direction, EdgeKey, Site};
use crate::paths::{is_rightmost, to_interface, LatticePath};

/// A finite set of lattice points.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteRegion {
    pub sites: BTreeSet<Site>,
}

impl DiscreteRegion {
    pub fn new(sites: impl IntoIterator<Item = Site>) -> Self {
        DiscreteRegion { sites: sites.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn contains(&self, s: Site) -> bool {
        self.sites.contains(&s)
    }

    pub fn points(&self) -> Vec<Point> {
        self.sites.iter().map(|&s| s.into()).collect()
    }
}

/// The interface of a circuit as a closed plane curve.
pub fn interface_curve(gamma: &LatticePath) -> Result<Curve> {
    let iface = to_interface(gamma)?;
    Curve::closed(iface.polygon().into_iter().map(Point::from).collect())
}

/// Whether a circuit runs counter-clockwise, judged by its interface.
pub fn is_counterclockwise(gamma: &LatticePath) -> Result<bool> {
    Ok(interface_curve(gamma)?.signed_area() > 0.0)
}

/// Lattice points enclosed by the interface of a right-most circuit: those
/// of odd winding with respect to the interface curve.
pub fn vol(gamma: &LatticePath) -> Result<DiscreteRegion> {
    if !gamma.is_circuit() {
        return Err(domain("vol needs a circuit"));
    }
    if !is_rightmost(gamma) {
        return Err(domain("vol needs a right-most circuit"));
    }
    let c = interface_curve(gamma)?;
    let (lo, hi) = bounding_box(c.points());
    let mut sites = BTreeSet::new();
    for x in lo.x.ceil() as i32..=hi.x.floor() as i32 {
        for y in lo.y.ceil() as i32..=hi.y.floor() as i32 {
            let p = Point::new(x as f64, y as f64);
            if geom::winding_number(c.points(), p, 0.0).is_some_and(|w| w % 2 != 0) {
                sites.insert(Site::new(x, y));
            }
        }
    }
    Ok(DiscreteRegion { sites })
}

/// The right-most circuit tracing the outside of a connected set `u` in the
/// graph whose edges are the pairs of `u`-sites with `edge_ok`. It starts
/// at the lowest, then leftmost, site and always takes the sharpest right
/// turn, so the set stays on its left.
pub fn outer_boundary_circuit(u: &HashSet<Site>, edge_ok: impl Fn(EdgeKey) -> bool) -> Result<LatticePath> {
    let start = *u.iter().min_by_key(|s| (s.y, s.x)).ok_or_else(|| domain("empty set has no boundary"))?;
    let linked = |v: Site, d: Direction| {
        let w = v.step(d);
        u.contains(&w) && edge_ok(EdgeKey::between(v, w).unwrap())
    };
    let turn = |v: Site, back: Direction| {
        let mut d = back;
        for _ in 0..4 {
            d = d.ccw_next();
            if linked(v, d) {
                return Some(d);
            }
        }
        None
    };
    let first = turn(start, Direction::S).ok_or_else(|| Error::Degenerate("an isolated site has no boundary circuit".into()))?;
    let mut verts = vec![start];
    let mut v = start;
    let mut d = first;
    let limit = 8 * u.len() + 8;
    loop {
        v = v.step(d);
        verts.push(v);
        let next = turn(v, d.reverse()).expect("arrived along an edge");
        if v == start && next == first {
            break;
        }
        d = next;
        if verts.len() > limit {
            return Err(Error::Degenerate("boundary trace did not close".into()));
        }
    }
    LatticePath::new(verts)
}

/// A set for Hausdorff comparison.
#[derive(Clone, Copy, Debug)]
pub enum SetRef<'a> {
    Points(&'a [Point]),
    /// The closed region `hull(λ)` of a closed curve.
    Region(&'a Curve),
    Sites(&'a DiscreteRegion),
}

impl SetRef<'_> {
    fn prepare(&self, step: f64) -> Result<Prepared> {
        match self {
            SetRef::Points([]) => Err(domain("empty point set")),
            SetRef::Points(p) => Ok(Prepared::points(p)),
            SetRef::Region(c) if !c.is_closed() => Ok(Prepared::points(&densify(c, step))),
            SetRef::Region(c) => Ok(Prepared::region(c.points(), step)),
            SetRef::Sites(r) if r.is_empty() => Err(domain("empty site set")),
            SetRef::Sites(r) => Ok(Prepared::points(&r.points())),
        }
    }

    fn extent(&self) -> f64 {
        let (lo, hi) = match self {
            SetRef::Points(p) => bounding_box(p),
            SetRef::Region(c) => bounding_box(c.points()),
            SetRef::Sites(r) => bounding_box(&r.points()),
        };
        (hi - lo).norm_inf()
    }
}

fn densify(c: &Curve, step: f64) -> Vec<Point> {
    let mut out = Vec::new();
    for (a, b) in c.segments() {
        let k = (((b - a).norm_inf() / step).ceil() as usize).max(1);
        out.extend((0..k).map(|j| a.lerp(b, j as f64 / k as f64)));
    }
    out.push(*c.points().last().unwrap());
    out
}

/// ℓ∞ Hausdorff distance; regions are sampled on a grid of spacing `step`.
pub fn hausdorff_with_step(a: SetRef<'_>, b: SetRef<'_>, step: f64) -> Result<f64> {
    Ok(geom::hausdorff(&a.prepare(step)?, &b.prepare(step)?))
}

/// ℓ∞ Hausdorff distance with a sampling step of 1/256 of the larger extent.
pub fn hausdorff(a: SetRef<'_>, b: SetRef<'_>) -> Result<f64> {
    let step = (a.extent().max(b.extent()) / 256.0).max(1e-9);
    hausdorff_with_step(a, b, step)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[(i32, i32)]) -> LatticePath {
        LatticePath::new(v.iter().map(|&(x, y)| Site::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn unit_square_volumes() {
        let ccw = p(&[(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)]);
        assert_eq!(vol(&ccw).unwrap().len(), 4);
        assert!(is_counterclockwise(&ccw).unwrap());
        assert!(vol(&ccw.reversed()).unwrap().is_empty());
    }

    #[test]
    fn block_boundary() {
        let u: HashSet<Site> = (0..3).flat_map(|x| (0..3).map(move |y| Site::new(x, y))).collect();
        let g = outer_boundary_circuit(&u, |_| true).unwrap();
        assert!(g.is_circuit() && is_rightmost(&g));
        assert_eq!(g.len(), 8);
        assert_eq!(vol(&g).unwrap().sites, u.iter().copied().collect());
    }

    #[test]
    fn tree_boundary_backtracks() {
        let u: HashSet<Site> = [(0, 0), (1, 0), (2, 0), (1, 1)].iter().map(|&(x, y)| Site::new(x, y)).collect();
        let g = outer_boundary_circuit(&u, |_| true).unwrap();
        assert_eq!(g.len(), 6);
        assert!(is_rightmost(&g));
        assert_eq!(vol(&g).unwrap().len(), 4);
    }

    #[test]
    fn hausdorff_of_squares() {
        let a = Curve::closed(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)]).unwrap();
        let b = a.scaled(2.0);
        assert!((hausdorff(SetRef::Region(&a), SetRef::Region(&b)).unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(hausdorff(SetRef::Region(&a), SetRef::Region(&a)).unwrap(), 0.0);
        assert!(hausdorff(SetRef::Points(&[]), SetRef::Region(&a)).is_err());
    }
}
