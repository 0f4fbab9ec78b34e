//! Planar conventions for Z², its dual and its medial graph.
//!
//! Directions are indexed counter-clockwise starting east. Faces are named
//! by their lower-left corner, so the dual site of face `f` sits at
//! `f + (1/2, 1/2)` but is stored with integer coordinates.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Sub};

use crate::error::{domain, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(into = "[i32; 2]", from = "[i32; 2]")]
pub struct Site {
    pub x: i32,
    pub y: i32,
}

impl fmt::Debug for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Site {
    pub const ORIGIN: Site = Site { x: 0, y: 0 };

    pub const fn new(x: i32, y: i32) -> Self {
        Site { x, y }
    }

    pub fn step(self, d: Direction) -> Site {
        let (dx, dy) = d.unit();
        Site::new(self.x + dx, self.y + dy)
    }

    pub fn norm_inf(self) -> i32 {
        self.x.abs().max(self.y.abs())
    }

    pub fn norm_l1(self) -> i32 {
        self.x.abs() + self.y.abs()
    }

    pub fn dist_inf(self, o: Site) -> i32 {
        (self - o).norm_inf()
    }

    pub fn dist_l1(self, o: Site) -> i32 {
        (self - o).norm_l1()
    }

    pub fn is_adjacent(self, o: Site) -> bool {
        self.dist_l1(o) == 1
    }

    /// Direction of the unit step from `self` to `o`, if they are adjacent.
    pub fn direction_to(self, o: Site) -> Option<Direction> {
        match (o.x - self.x, o.y - self.y) {
            (1, 0) => Some(Direction::E),
            (0, 1) => Some(Direction::N),
            (-1, 0) => Some(Direction::W),
            (0, -1) => Some(Direction::S),
            _ => None,
        }
    }

    pub fn to_f64(self) -> (f64, f64) {
        (self.x as f64, self.y as f64)
    }
}

impl From<Site> for [i32; 2] {
    fn from(s: Site) -> Self {
        [s.x, s.y]
    }
}

impl From<[i32; 2]> for Site {
    fn from(a: [i32; 2]) -> Self {
        Site::new(a[0], a[1])
    }
}

impl Add for Site {
    type Output = Site;
    fn add(self, o: Site) -> Site {
        Site::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Site {
    type Output = Site;
    fn sub(self, o: Site) -> Site {
        Site::new(self.x - o.x, self.y - o.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Direction {
    E = 0,
    N = 1,
    W = 2,
    S = 3,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::E, Direction::N, Direction::W, Direction::S];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Direction {
        Direction::ALL[i & 3]
    }

    pub fn ccw_next(self) -> Direction {
        Direction::from_index(self.index() + 1)
    }

    pub fn cw_next(self) -> Direction {
        Direction::from_index(self.index() + 3)
    }

    pub fn reverse(self) -> Direction {
        Direction::from_index(self.index() + 2)
    }

    pub fn unit(self) -> (i32, i32) {
        match self {
            Direction::E => (1, 0),
            Direction::N => (0, 1),
            Direction::W => (-1, 0),
            Direction::S => (0, -1),
        }
    }

    pub fn axis(self) -> Axis {
        match self {
            Direction::E | Direction::W => Axis::Horizontal,
            Direction::N | Direction::S => Axis::Vertical,
        }
    }
}

/// Directions strictly between `back` and `fwd`, sweeping counter-clockwise
/// from `back`. Allocation free.
#[derive(Clone, Copy, Debug)]
pub struct BoundaryDirs {
    next: usize,
    left: usize,
}

impl Iterator for BoundaryDirs {
    type Item = Direction;
    fn next(&mut self) -> Option<Direction> {
        if self.left == 0 {
            return None;
        }
        let d = Direction::from_index(self.next);
        self.next += 1;
        self.left -= 1;
        Some(d)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.left, Some(self.left))
    }
}

impl ExactSizeIterator for BoundaryDirs {}

pub fn right_boundary_dirs(back: Direction, fwd: Direction) -> BoundaryDirs {
    let count = (fwd.index() + 8 - back.index() - 1) % 4;
    BoundaryDirs { next: back.index() + 1, left: count }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DirectedEdge {
    pub from: Site,
    pub dir: Direction,
}

impl fmt::Debug for DirectedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}->{:?}", self.from, self.dir)
    }
}

impl DirectedEdge {
    pub const fn new(from: Site, dir: Direction) -> Self {
        DirectedEdge { from, dir }
    }

    pub fn between(a: Site, b: Site) -> Option<Self> {
        a.direction_to(b).map(|d| DirectedEdge::new(a, d))
    }

    pub fn head(self) -> Site {
        self.from.step(self.dir)
    }

    pub fn reverse(self) -> Self {
        DirectedEdge::new(self.head(), self.dir.reverse())
    }

    pub fn key(self) -> EdgeKey {
        match self.dir {
            Direction::E | Direction::N => EdgeKey { origin: self.from, axis: self.dir.axis() },
            Direction::W | Direction::S => EdgeKey { origin: self.head(), axis: self.dir.axis() },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// An undirected edge, named by its lexicographically smaller endpoint.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeKey {
    pub origin: Site,
    pub axis: Axis,
}

impl fmt::Debug for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.axis {
            Axis::Horizontal => 'h',
            Axis::Vertical => 'v',
        };
        write!(f, "{}{:?}", tag, self.origin)
    }
}

impl EdgeKey {
    pub const fn horizontal(x: i32, y: i32) -> Self {
        EdgeKey { origin: Site::new(x, y), axis: Axis::Horizontal }
    }

    pub const fn vertical(x: i32, y: i32) -> Self {
        EdgeKey { origin: Site::new(x, y), axis: Axis::Vertical }
    }

    pub fn between(a: Site, b: Site) -> Option<Self> {
        DirectedEdge::between(a, b).map(DirectedEdge::key)
    }

    pub fn positive_dir(self) -> Direction {
        match self.axis {
            Axis::Horizontal => Direction::E,
            Axis::Vertical => Direction::N,
        }
    }

    pub fn endpoints(self) -> (Site, Site) {
        (self.origin, self.origin.step(self.positive_dir()))
    }

    /// The edge oriented away from its smaller endpoint.
    pub fn forward(self) -> DirectedEdge {
        DirectedEdge::new(self.origin, self.positive_dir())
    }

    /// The two faces bordering this edge, the one with larger coordinates first.
    pub fn faces(self) -> (Face, Face) {
        let o = self.origin;
        match self.axis {
            Axis::Horizontal => (Face::new(o.x, o.y), Face::new(o.x, o.y - 1)),
            Axis::Vertical => (Face::new(o.x, o.y), Face::new(o.x - 1, o.y)),
        }
    }

    pub fn midpoint(self) -> (f64, f64) {
        let (a, b) = self.endpoints();
        ((a.x + b.x) as f64 / 2.0, (a.y + b.y) as f64 / 2.0)
    }
}

/// A face of Z², named by its lower-left corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face {
    pub ll: Site,
}

impl Face {
    pub const fn new(x: i32, y: i32) -> Self {
        Face { ll: Site::new(x, y) }
    }

    /// The four edges around the face in clockwise order starting at the bottom.
    pub fn edges_clockwise(self) -> [EdgeKey; 4] {
        let Site { x, y } = self.ll;
        [
            EdgeKey::horizontal(x, y),
            EdgeKey::vertical(x, y),
            EdgeKey::horizontal(x, y + 1),
            EdgeKey::vertical(x + 1, y),
        ]
    }

    /// The face as a vertex of the (translated) dual lattice.
    pub fn as_dual_site(self) -> Site {
        self.ll
    }
}

/// An oriented edge of the dual lattice, named by the primal edge it crosses.
///
/// `dir` is the direction the dual edge points in; it is always perpendicular
/// to the crossed edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualEdge {
    pub crossed: EdgeKey,
    pub dir: Direction,
}

impl DualEdge {
    pub fn tail(self) -> Face {
        let (hi, lo) = self.crossed.faces();
        match self.dir {
            Direction::S | Direction::W => hi,
            Direction::N | Direction::E => lo,
        }
    }

    pub fn head(self) -> Face {
        let (hi, lo) = self.crossed.faces();
        match self.dir {
            Direction::S | Direction::W => lo,
            Direction::N | Direction::E => hi,
        }
    }

    pub fn key(self) -> EdgeKey {
        self.crossed
    }

    /// The same edge seen as a directed edge of the dual lattice, with faces
    /// stored as integer sites.
    pub fn as_dual_directed(self) -> DirectedEdge {
        DirectedEdge::new(self.tail().as_dual_site(), self.dir)
    }

    /// Inverse of [`DualEdge::as_dual_directed`].
    pub fn from_dual_directed(e: DirectedEdge) -> DualEdge {
        let tail = e.from;
        let crossed = match e.dir {
            Direction::E => EdgeKey::vertical(tail.x + 1, tail.y),
            Direction::W => EdgeKey::vertical(tail.x, tail.y),
            Direction::N => EdgeKey::horizontal(tail.x, tail.y + 1),
            Direction::S => EdgeKey::horizontal(tail.x, tail.y),
        };
        DualEdge { crossed, dir: e.dir }
    }
}

/// The dual of `e`: it crosses `e` and points from the face on the left of
/// `e` to the face on its right.
pub fn dual_of(e: DirectedEdge) -> DualEdge {
    DualEdge { crossed: e.key(), dir: e.dir.cw_next() }
}

/// The dual of a dual edge, back on the primal lattice. Applying the map
/// twice to a primal edge reverses it.
pub fn dual_of_dual(d: DualEdge) -> DirectedEdge {
    let dir = d.dir.cw_next();
    let (a, b) = d.crossed.endpoints();
    if a.step(dir) == b {
        DirectedEdge::new(a, dir)
    } else {
        DirectedEdge::new(b, dir)
    }
}

/// Medial neighbours of `v` inside `face`, as `(predecessor, successor)` in the
/// clockwise orientation of the face.
pub fn medial_successors(v: EdgeKey, face: Face) -> Result<(EdgeKey, EdgeKey)> {
    let ring = face.edges_clockwise();
    let i = ring
        .iter()
        .position(|&k| k == v)
        .ok_or_else(|| domain(format!("face {:?} does not border edge {:?}", face, v)))?;
    Ok((ring[(i + 3) % 4], ring[(i + 1) % 4]))
}

/// The two medial out-neighbours of `v`, one per bordering face.
pub fn medial_out_neighbors(v: EdgeKey) -> [EdgeKey; 2] {
    let (f1, f2) = v.faces();
    let a = medial_successors(v, f1).expect("bordering face").1;
    let b = medial_successors(v, f2).expect("bordering face").1;
    [a, b]
}

/// The two medial in-neighbours of `v`.
pub fn medial_in_neighbors(v: EdgeKey) -> [EdgeKey; 2] {
    let (f1, f2) = v.faces();
    let a = medial_successors(v, f1).expect("bordering face").0;
    let b = medial_successors(v, f2).expect("bordering face").0;
    [a, b]
}

#[cfg(test)]
mod tests {
    use super::*;
    use Direction::*;

    #[test]
    fn boundary_dirs_examples() {
        assert_eq!(right_boundary_dirs(W, E).collect::<Vec<_>>(), vec![S]);
        assert_eq!(right_boundary_dirs(W, S).collect::<Vec<_>>(), vec![]);
        assert_eq!(right_boundary_dirs(W, W).collect::<Vec<_>>(), vec![S, E, N]);
    }

    #[test]
    fn boundary_dirs_length_formula() {
        for b in Direction::ALL {
            for f in Direction::ALL {
                let n = right_boundary_dirs(b, f).len();
                assert_eq!(n, (f.index() + 4 - b.index() + 3) % 4);
                let mut cycle: Vec<_> = right_boundary_dirs(b, f).collect();
                cycle.push(f);
                if b != f {
                    let mut d = f.ccw_next();
                    while d != b {
                        cycle.push(d);
                        d = d.ccw_next();
                    }
                }
                let mut sorted = cycle.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), cycle.len());
                assert!(!cycle.contains(&b) || b == f);
            }
        }
    }

    #[test]
    fn ccw_cycle() {
        assert_eq!(E.ccw_next(), N);
        assert_eq!(N.ccw_next(), W);
        assert_eq!(W.ccw_next(), S);
        assert_eq!(S.ccw_next(), E);
        for d in Direction::ALL {
            assert_eq!(d.reverse().index(), (d.index() + 2) % 4);
        }
    }

    #[test]
    fn dual_of_east_edge_points_south() {
        let e = DirectedEdge::new(Site::ORIGIN, E);
        let d = dual_of(e);
        assert_eq!(d.tail(), Face::new(0, 0));
        assert_eq!(d.head(), Face::new(0, -1));
        assert_eq!(dual_of_dual(d), e.reverse());
        assert_eq!(dual_of(e).key(), dual_of(e.reverse()).key());
    }

    #[test]
    fn dual_directed_roundtrip() {
        for d in Direction::ALL {
            let e = DirectedEdge::new(Site::new(2, -3), d);
            let de = dual_of(e);
            assert_eq!(DualEdge::from_dual_directed(de.as_dual_directed()), de);
            assert_eq!(de.as_dual_directed().head(), de.head().as_dual_site());
        }
    }

    #[test]
    fn medial_face_cycle_has_length_four() {
        let f = Face::new(0, 0);
        let start = EdgeKey::horizontal(0, 0);
        let (pred, succ) = medial_successors(start, f).unwrap();
        assert_eq!(succ, EdgeKey::vertical(0, 0));
        assert_eq!(pred, EdgeKey::vertical(1, 0));
        let mut v = start;
        for _ in 0..4 {
            v = medial_successors(v, f).unwrap().1;
        }
        assert_eq!(v, start);
        assert!(medial_successors(start, Face::new(5, 5)).is_err());
    }

    #[test]
    fn medial_degrees_are_two() {
        let v = EdgeKey::vertical(3, 1);
        let outs = medial_out_neighbors(v);
        let ins = medial_in_neighbors(v);
        assert_ne!(outs[0], outs[1]);
        assert_ne!(ins[0], ins[1]);
        for w in outs {
            assert!(medial_in_neighbors(w).contains(&v));
        }
    }

    #[test]
    fn edge_keys_are_orientation_free() {
        for d in Direction::ALL {
            let e = DirectedEdge::new(Site::new(-1, 4), d);
            assert_eq!(e.key(), e.reverse().key());
            assert_eq!(e.reverse().reverse(), e);
            assert!(e.from.is_adjacent(e.head()));
        }
    }
}
