//! Incremental right-most path construction.
//!
//! The right-most property is prefix closed: a path is right-most iff every
//! prefix is, and appending a step only adds boundary edges at the current
//! vertex. The walker keeps per-edge traversal bits and boundary
//! multiplicities over a finite window so each step is checked in O(1).

use crate::lattice::{right_boundary_dirs, Axis, Direction, EdgeKey, Site};

#[derive(Clone, Copy, Debug)]
pub(crate) struct EdgeIndexer {
    pub center: Site,
    pub radius: i32,
}

impl EdgeIndexer {
    pub fn horizontal_count(&self) -> usize {
        let n = self.radius as usize;
        (2 * n + 1) * (2 * n)
    }

    pub fn count(&self) -> usize {
        2 * self.horizontal_count()
    }

    pub fn index(&self, k: EdgeKey) -> Option<usize> {
        let l = k.origin - self.center;
        let n = self.radius;
        match k.axis {
            Axis::Horizontal => {
                if l.x < -n || l.x >= n || l.y.abs() > n {
                    return None;
                }
                Some(((l.y + n) * (2 * n) + (l.x + n)) as usize)
            }
            Axis::Vertical => {
                if l.x.abs() > n || l.y < -n || l.y >= n {
                    return None;
                }
                Some(self.horizontal_count() + ((l.y + n) * (2 * n + 1) + (l.x + n)) as usize)
            }
        }
    }

    pub fn key(&self, i: usize) -> EdgeKey {
        let n = self.radius;
        let c = self.center;
        let hc = self.horizontal_count();
        if i < hc {
            let i = i as i32;
            EdgeKey::horizontal(c.x + i % (2 * n) - n, c.y + i / (2 * n) - n)
        } else {
            let i = (i - hc) as i32;
            EdgeKey::vertical(c.x + i % (2 * n + 1) - n, c.y + i / (2 * n + 1) - n)
        }
    }
}

/// Orientation bit of the step `from --d-->`: 1 along the key's positive
/// direction, 2 against it.
#[inline]
pub(crate) fn orientation_bit(d: Direction) -> u8 {
    match d {
        Direction::E | Direction::N => 1,
        Direction::W | Direction::S => 2,
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct StepUndo {
    key: usize,
    bit: u8,
    boundary: [usize; 3],
    nb: u8,
}

pub(crate) struct Walker {
    pub idx: EdgeIndexer,
    traversable: Vec<bool>,
    trav: Vec<u8>,
    bcount: Vec<u16>,
    pub verts: Vec<Site>,
    pub dirs: Vec<Direction>,
}

impl Walker {
    pub fn new(idx: EdgeIndexer, traversable: Vec<bool>, start: Site) -> Self {
        let m = idx.count();
        debug_assert_eq!(traversable.len(), m);
        Walker { idx, traversable, trav: vec![0; m], bcount: vec![0; m], verts: vec![start], dirs: Vec::new() }
    }

    pub fn current(&self) -> Site {
        *self.verts.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    /// Backward direction at the current vertex, if a step has been taken.
    pub fn back(&self) -> Option<Direction> {
        self.dirs.last().map(|d| d.reverse())
    }

    /// Appends a step if the result stays right-most and inside the window.
    pub fn try_step(&mut self, d: Direction) -> Option<StepUndo> {
        let v = self.current();
        let k = EdgeKey::between(v, v.step(d)).unwrap();
        let ki = self.idx.index(k)?;
        if !self.traversable[ki] || self.bcount[ki] != 0 {
            return None;
        }
        let bit = orientation_bit(d);
        if self.trav[ki] & bit != 0 {
            return None;
        }
        let mut undo = StepUndo { key: ki, bit, boundary: [0; 3], nb: 0 };
        if let Some(back) = self.back() {
            for q in right_boundary_dirs(back, d) {
                let kq = EdgeKey::between(v, v.step(q)).unwrap();
                if let Some(qi) = self.idx.index(kq) {
                    if self.trav[qi] != 0 {
                        return None;
                    }
                    undo.boundary[undo.nb as usize] = qi;
                    undo.nb += 1;
                }
            }
        }
        for &qi in &undo.boundary[..undo.nb as usize] {
            self.bcount[qi] += 1;
        }
        self.trav[ki] |= bit;
        self.verts.push(v.step(d));
        self.dirs.push(d);
        Some(undo)
    }

    pub fn undo(&mut self, u: StepUndo) {
        self.trav[u.key] &= !u.bit;
        for &qi in &u.boundary[..u.nb as usize] {
            self.bcount[qi] -= 1;
        }
        self.verts.pop();
        self.dirs.pop();
    }

    /// Whether the current walk, read as a circuit, is right-most. Only
    /// meaningful when it has returned to its start.
    pub fn closes_as_circuit(&self) -> bool {
        if self.dirs.is_empty() || self.current() != self.verts[0] {
            return false;
        }
        let v = self.verts[0];
        let back = self.dirs.last().unwrap().reverse();
        let fwd = self.dirs[0];
        right_boundary_dirs(back, fwd).all(|q| {
            let kq = EdgeKey::between(v, v.step(q)).unwrap();
            self.idx.index(kq).is_none_or(|qi| self.trav[qi] == 0)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexer_roundtrip() {
        let idx = EdgeIndexer { center: Site::new(2, -1), radius: 3 };
        for i in 0..idx.count() {
            assert_eq!(idx.index(idx.key(i)), Some(i));
        }
        assert_eq!(idx.index(EdgeKey::horizontal(5, 0)), None);
        assert_eq!(idx.index(EdgeKey::vertical(2, 2)), None);
    }
}
