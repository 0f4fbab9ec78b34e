use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::lattice::{Axis, Direction, EdgeKey, Site};
use crate::rng;

/// A Bernoulli(p) bond configuration on the box `center + B∞(radius)`.
///
/// Each edge carries one uniform from the `(seed, EDGE, edge)` stream and is
/// open iff that uniform is below `p`, so configurations at different `p`
/// with the same seed are monotonically coupled. Edge streams are keyed by
/// absolute coordinates; sub-boxes and enlargements with the same seed agree
/// on their common edges.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    pub p: f64,
    pub radius: i32,
    pub center: Site,
    pub seed: u64,
    /// Edge `(x,y)-(x+1,y)` at index `(y+N)*2N + (x+N)` in box-local coordinates.
    pub(crate) horizontal: Vec<bool>,
    /// Edge `(x,y)-(x,y+1)` at index `(y+N)*(2N+1) + (x+N)` in box-local coordinates.
    pub(crate) vertical: Vec<bool>,
}

pub(crate) fn edge_uniform(seed: u64, k: EdgeKey) -> f64 {
    let axis_bit = match k.axis {
        Axis::Horizontal => 0u64,
        Axis::Vertical => 1u64 << 63,
    };
    rng::uniform(seed, rng::tag::EDGE, rng::site_key(k.origin.x, k.origin.y) ^ axis_bit)
}

impl Configuration {
    /// Samples the box `B∞(radius)` around the origin.
    pub fn sample(p: f64, radius: i32, seed: u64) -> Result<Self> {
        Self::sample_at(p, radius, Site::ORIGIN, seed)
    }

    /// Samples the box `center + B∞(radius)`.
    pub fn sample_at(p: f64, radius: i32, center: Site, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(domain(format!("p = {p} is not a probability")));
        }
        Self::from_fn(p, radius, center, seed, |k| edge_uniform(seed, k) < p)
    }

    /// Builds a configuration from an explicit edge predicate.
    pub fn from_fn(
        p: f64,
        radius: i32,
        center: Site,
        seed: u64,
        mut open: impl FnMut(EdgeKey) -> bool,
    ) -> Result<Self> {
        if radius < 1 {
            return Err(domain(format!("radius {radius} must be at least 1")));
        }
        let n = radius;
        let side = (2 * n + 1) as usize;
        let mut horizontal = Vec::with_capacity(side * (side - 1));
        for y in -n..=n {
            for x in -n..n {
                horizontal.push(open(EdgeKey::horizontal(center.x + x, center.y + y)));
            }
        }
        let mut vertical = Vec::with_capacity(side * (side - 1));
        for y in -n..n {
            for x in -n..=n {
                vertical.push(open(EdgeKey::vertical(center.x + x, center.y + y)));
            }
        }
        Ok(Configuration { p, radius, center, seed, horizontal, vertical })
    }

    /// All edges open.
    pub fn full(radius: i32) -> Result<Self> {
        Self::from_fn(1.0, radius, Site::ORIGIN, 0, |_| true)
    }

    pub fn side(&self) -> usize {
        (2 * self.radius + 1) as usize
    }

    pub fn site_count(&self) -> usize {
        self.side() * self.side()
    }

    pub fn edge_count(&self) -> usize {
        self.horizontal.len() + self.vertical.len()
    }

    pub fn contains(&self, s: Site) -> bool {
        (s - self.center).norm_inf() <= self.radius
    }

    pub fn contains_edge(&self, k: EdgeKey) -> bool {
        let (a, b) = k.endpoints();
        self.contains(a) && self.contains(b)
    }

    /// Row-major index of a site of the box.
    pub fn site_index(&self, s: Site) -> Option<usize> {
        if !self.contains(s) {
            return None;
        }
        let l = s - self.center;
        let n = self.radius;
        Some(((l.y + n) * (2 * n + 1) + (l.x + n)) as usize)
    }

    pub fn site_at(&self, index: usize) -> Site {
        let side = self.side() as i32;
        let i = index as i32;
        Site::new(i % side - self.radius + self.center.x, i / side - self.radius + self.center.y)
    }

    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        (0..self.site_count()).map(move |i| self.site_at(i))
    }

    fn edge_slot(&self, k: EdgeKey) -> Option<(Axis, usize)> {
        if !self.contains_edge(k) {
            return None;
        }
        let l = k.origin - self.center;
        let n = self.radius;
        let idx = match k.axis {
            Axis::Horizontal => (l.y + n) * (2 * n) + (l.x + n),
            Axis::Vertical => (l.y + n) * (2 * n + 1) + (l.x + n),
        };
        Some((k.axis, idx as usize))
    }

    /// `Some(open?)` for edges of the box, `None` outside.
    pub fn edge_state(&self, k: EdgeKey) -> Option<bool> {
        self.edge_slot(k).map(|(axis, i)| match axis {
            Axis::Horizontal => self.horizontal[i],
            Axis::Vertical => self.vertical[i],
        })
    }

    /// Open edges inside the box; every edge outside is reported closed.
    pub fn is_open(&self, k: EdgeKey) -> bool {
        self.edge_state(k).unwrap_or(false)
    }

    pub fn set(&mut self, k: EdgeKey, open: bool) -> Result<()> {
        match self.edge_slot(k) {
            Some((Axis::Horizontal, i)) => self.horizontal[i] = open,
            Some((Axis::Vertical, i)) => self.vertical[i] = open,
            None => return Err(domain(format!("edge {k:?} is outside the box"))),
        }
        Ok(())
    }

    pub fn open_edge_count(&self) -> usize {
        self.horizontal.iter().chain(&self.vertical).filter(|&&b| b).count()
    }

    /// Every edge of the box, horizontal edges first, each family row-major.
    pub fn edges(&self) -> impl Iterator<Item = EdgeKey> + '_ {
        let n = self.radius;
        let c = self.center;
        let h = (-n..=n).flat_map(move |y| (-n..n).map(move |x| EdgeKey::horizontal(c.x + x, c.y + y)));
        let v = (-n..n).flat_map(move |y| (-n..=n).map(move |x| EdgeKey::vertical(c.x + x, c.y + y)));
        h.chain(v)
    }

    /// Open neighbours of `s` inside the box.
    pub fn open_neighbors(&self, s: Site) -> impl Iterator<Item = Site> + '_ {
        Direction::ALL.into_iter().filter_map(move |d| {
            let t = s.step(d);
            let k = EdgeKey::between(s, t).expect("adjacent");
            self.is_open(k).then_some(t)
        })
    }

    /// The restriction to the concentric box of radius `radius`.
    pub fn restrict(&self, radius: i32) -> Result<Self> {
        if radius > self.radius {
            return Err(domain(format!("cannot restrict radius {} to {}", self.radius, radius)));
        }
        Self::from_fn(self.p, radius, self.center, self.seed, |k| self.is_open(k))
    }

    /// The same bits shifted by `z`.
    pub fn translated(&self, z: Site) -> Self {
        let mut c = self.clone();
        c.center = self.center + z;
        c
    }

    /// The dual configuration: a dual edge is open iff the primal edge it
    /// crosses is closed. The edge family is kept in primal coordinates.
    pub fn dual(&self) -> Self {
        let mut c = self.clone();
        c.p = 1.0 - self.p;
        c.horizontal.iter_mut().for_each(|b| *b = !*b);
        c.vertical.iter_mut().for_each(|b| *b = !*b);
        c
    }
}
