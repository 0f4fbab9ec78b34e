//! Plane geometry primitives in `f64`.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

use crate::lattice::Site;

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(into = "[f64; 2]", from = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl From<[f64; 2]> for Point {
    fn from(a: [f64; 2]) -> Self {
        Point::new(a[0], a[1])
    }
}

impl From<(f64, f64)> for Point {
    fn from(a: (f64, f64)) -> Self {
        Point::new(a.0, a.1)
    }
}

impl From<Site> for Point {
    fn from(s: Site) -> Self {
        Point::new(s.x as f64, s.y as f64)
    }
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm_inf(self) -> f64 {
        self.x.abs().max(self.y.abs())
    }

    pub fn norm_l1(self) -> f64 {
        self.x.abs() + self.y.abs()
    }

    pub fn norm_l2(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn unit(self) -> Point {
        let n = self.norm_l2();
        Point::new(self.x / n, self.y / n)
    }

    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        Point::new(self.x + t * (o.x - self.x), self.y + t * (o.y - self.y))
    }

    pub fn rounded(self) -> Site {
        Site::new(self.x.round() as i32, self.y.round() as i32)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// ℓ∞ distance from `p` to the segment `[a, b]`.
///
/// The distance along the segment is a maximum of two piecewise-linear
/// functions of the parameter, so its minimum sits at a breakpoint.
pub fn dist_inf_point_segment(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    let f = |t: f64| (a + d * t - p).norm_inf();
    let mut best = f(0.0).min(f(1.0));
    let (u, v) = (a.x - p.x, a.y - p.y);
    let mut cand = |num: f64, den: f64| {
        if den.abs() > 1e-300 {
            let t = num / den;
            if (0.0..=1.0).contains(&t) {
                best = best.min(f(t));
            }
        }
    };
    cand(-u, d.x);
    cand(-v, d.y);
    cand(-(u - v), d.x - d.y);
    cand(-(u + v), d.x + d.y);
    best
}

/// Proper or touching intersection of two closed segments.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o = |p: Point, q: Point, r: Point| (q - p).cross(r - p);
    let on = |p: Point, q: Point, r: Point| {
        r.x >= p.x.min(q.x) - 1e-12 && r.x <= p.x.max(q.x) + 1e-12 && r.y >= p.y.min(q.y) - 1e-12 && r.y <= p.y.max(q.y) + 1e-12
    };
    let (d1, d2, d3, d4) = (o(c, d, a), o(c, d, b), o(a, b, c), o(a, b, d));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on(c, d, a)) || (d2 == 0.0 && on(c, d, b)) || (d3 == 0.0 && on(a, b, c)) || (d4 == 0.0 && on(a, b, d))
}

/// Crossing point of segments `[a,b]` and `[c,d]` in their relative
/// interiors, if they cross transversally.
pub fn proper_crossing(a: Point, b: Point, c: Point, d: Point) -> Option<(Point, f64, f64)> {
    let r = b - a;
    let s = d - c;
    let den = r.cross(s);
    if den.abs() < 1e-300 {
        return None;
    }
    let t = (c - a).cross(s) / den;
    let u = (c - a).cross(r) / den;
    let eps = 1e-12;
    if t > eps && t < 1.0 - eps && u > eps && u < 1.0 - eps {
        Some((a + r * t, t, u))
    } else {
        None
    }
}

/// ℓ∞ distance between two segments.
pub fn dist_inf_segments(a: Point, b: Point, c: Point, d: Point) -> f64 {
    if segments_intersect(a, b, c, d) {
        return 0.0;
    }
    dist_inf_point_segment(a, c, d)
        .min(dist_inf_point_segment(b, c, d))
        .min(dist_inf_point_segment(c, a, b))
        .min(dist_inf_point_segment(d, a, b))
}

/// ℓ∞ distance from a point to a polyline (open, given as a vertex list).
pub fn dist_inf_point_polyline(p: Point, pts: &[Point]) -> f64 {
    match pts.len() {
        0 => f64::INFINITY,
        1 => (pts[0] - p).norm_inf(),
        _ => pts.windows(2).map(|w| dist_inf_point_segment(p, w[0], w[1])).fold(f64::INFINITY, f64::min),
    }
}

/// Signed shoelace area of a closed polygon given without repeated endpoint.
pub fn signed_area(pts: &[Point]) -> f64 {
    let n = pts.len();
    if n < 3 {
        return 0.0;
    }
    (0..n).map(|i| pts[i].cross(pts[(i + 1) % n])).sum::<f64>() / 2.0
}

/// Closed polyline: the vertex list with the first point appended.
pub fn closed(pts: &[Point]) -> Vec<Point> {
    let mut v = pts.to_vec();
    if let Some(&f) = pts.first() {
        v.push(f);
    }
    v
}

/// ℓ∞ Hausdorff distance between a polyline and the segment `[a, b]`.
///
/// The polyline-to-segment direction is exact; the reverse direction is
/// evaluated at the segment's endpoints and at points spaced `step` apart,
/// so it may be underestimated by at most `step`.
pub fn hausdorff_polyline_segment(pts: &[Point], a: Point, b: Point, step: f64) -> f64 {
    let forward = pts.iter().map(|&p| dist_inf_point_segment(p, a, b)).fold(0.0, f64::max);
    let len = (b - a).norm_inf();
    let k = ((len / step).ceil() as usize).max(1);
    let backward = (0..=k)
        .map(|i| dist_inf_point_polyline(a.lerp(b, i as f64 / k as f64), pts))
        .fold(0.0, f64::max);
    forward.max(backward)
}

/// Winding number of the closed polyline `pts` around `p`, or `None` when
/// `p` lies within `tol` of the curve.
pub fn winding_number(pts: &[Point], p: Point, tol: f64) -> Option<i32> {
    let n = pts.len();
    if n == 0 {
        return Some(0);
    }
    let mut w = 0;
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        if dist_inf_point_segment(p, a, b) <= tol {
            return None;
        }
        if a.y <= p.y {
            if b.y > p.y && (b - a).cross(p - a) > 0.0 {
                w += 1;
            }
        } else if b.y <= p.y && (b - a).cross(p - a) < 0.0 {
            w -= 1;
        }
    }
    Some(w)
}

/// Axis-aligned bounding box as `(min, max)`.
pub fn bounding_box(pts: &[Point]) -> (Point, Point) {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in pts {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (lo, hi)
}

/// Bucketed point set for nearest-neighbour queries in ℓ∞.
#[derive(Clone, Debug)]
pub struct PointIndex {
    cell: f64,
    buckets: std::collections::HashMap<(i64, i64), Vec<Point>>,
    len: usize,
}

impl PointIndex {
    pub fn new(pts: &[Point], cell: f64) -> Self {
        let mut buckets: std::collections::HashMap<(i64, i64), Vec<Point>> = Default::default();
        for &p in pts {
            buckets.entry(Self::key(p, cell)).or_default().push(p);
        }
        PointIndex { cell, buckets, len: pts.len() }
    }

    fn key(p: Point, cell: f64) -> (i64, i64) {
        ((p.x / cell).floor() as i64, (p.y / cell).floor() as i64)
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// ℓ∞ distance from `q` to the nearest indexed point.
    pub fn nearest(&self, q: Point) -> f64 {
        if self.len == 0 {
            return f64::INFINITY;
        }
        let (cx, cy) = Self::key(q, self.cell);
        let mut best = f64::INFINITY;
        for ring in 0i64.. {
            // Every point in ring `ring` or beyond is at least this far away.
            if (ring - 1) as f64 * self.cell >= best {
                break;
            }
            for dx in -ring..=ring {
                for dy in -ring..=ring {
                    if dx.abs() != ring && dy.abs() != ring {
                        continue;
                    }
                    if let Some(b) = self.buckets.get(&(cx + dx, cy + dy)) {
                        for &p in b {
                            best = best.min((p - q).norm_inf());
                        }
                    }
                }
            }
            if ring > 1 << 20 {
                break;
            }
        }
        best
    }
}

/// A compact set prepared for Hausdorff comparisons: either a finite point
/// set or the closed region of odd winding of a polygon.
#[derive(Clone, Debug)]
pub struct Prepared {
    kind: PreparedKind,
    samples: Vec<Point>,
}

#[derive(Clone, Debug)]
enum PreparedKind {
    Points(PointIndex),
    Region(Vec<Point>),
}

impl Prepared {
    pub fn points(pts: &[Point]) -> Self {
        let (lo, hi) = bounding_box(pts);
        let span = (hi - lo).norm_inf().max(1e-9);
        let cell = (span / (pts.len() as f64).sqrt().max(1.0)).max(1e-9);
        Prepared { kind: PreparedKind::Points(PointIndex::new(pts, cell)), samples: pts.to_vec() }
    }

    /// The region bounded by the closed polyline `boundary`, sampled along
    /// its boundary and on an interior grid of spacing `step`.
    pub fn region(boundary: &[Point], step: f64) -> Self {
        let n = boundary.len();
        let mut samples = Vec::new();
        for i in 0..n {
            let (a, b) = (boundary[i], boundary[(i + 1) % n]);
            let k = (((b - a).norm_inf() / step).ceil() as usize).max(1);
            for j in 0..k {
                samples.push(a.lerp(b, j as f64 / k as f64));
            }
        }
        let (lo, hi) = bounding_box(boundary);
        let (nx, ny) = (((hi.x - lo.x) / step).ceil() as usize, ((hi.y - lo.y) / step).ceil() as usize);
        for i in 0..=nx {
            for j in 0..=ny {
                let p = Point::new(lo.x + i as f64 * step, lo.y + j as f64 * step);
                if winding_number(boundary, p, 0.0).is_some_and(|w| w % 2 != 0) {
                    samples.push(p);
                }
            }
        }
        Prepared { kind: PreparedKind::Region(boundary.to_vec()), samples }
    }

    pub fn samples(&self) -> &[Point] {
        &self.samples
    }

    pub fn centroid(&self) -> Point {
        match &self.kind {
            PreparedKind::Region(b) if signed_area(b).abs() > 0.0 => {
                let a = signed_area(b);
                let n = b.len();
                let mut c = Point::default();
                for i in 0..n {
                    let (p, q) = (b[i], b[(i + 1) % n]);
                    c = c + (p + q) * p.cross(q);
                }
                c * (1.0 / (6.0 * a))
            }
            _ => {
                let s = &self.samples;
                s.iter().fold(Point::default(), |acc, &p| acc + p) * (1.0 / s.len().max(1) as f64)
            }
        }
    }

    /// ℓ∞ distance from `q` to the set.
    pub fn dist(&self, q: Point) -> f64 {
        match &self.kind {
            PreparedKind::Points(idx) => idx.nearest(q),
            PreparedKind::Region(b) => match winding_number(b, q, 0.0) {
                None => 0.0,
                Some(w) if w % 2 != 0 => 0.0,
                Some(_) => {
                    let n = b.len();
                    (0..n).map(|i| dist_inf_point_segment(q, b[i], b[(i + 1) % n])).fold(f64::INFINITY, f64::min)
                }
            },
        }
    }
}

/// ℓ∞ Hausdorff distance between `a + shift` and `b`.
pub fn hausdorff_shifted(a: &Prepared, b: &Prepared, shift: Point) -> f64 {
    let ab = a.samples.iter().map(|&s| b.dist(s + shift)).fold(0.0, f64::max);
    let ba = b.samples.iter().map(|&s| a.dist(s - shift)).fold(0.0, f64::max);
    ab.max(ba)
}

pub fn hausdorff(a: &Prepared, b: &Prepared) -> f64 {
    hausdorff_shifted(a, b, Point::default())
}

/// Approximate `inf_ξ d_H(a + ξ, b)`: centroid alignment, then three
/// rounds of a 5×5 grid search, each shrinking the grid by a factor of 5.
/// Returns the distance and the shift achieving it.
pub fn min_hausdorff_over_shifts(a: &Prepared, b: &Prepared, span: f64) -> (f64, Point) {
    let mut best_shift = b.centroid() - a.centroid();
    let mut best = hausdorff_shifted(a, b, best_shift);
    let mut span = span;
    for _ in 0..3 {
        let center = best_shift;
        for i in -2..=2 {
            for j in -2..=2 {
                if i == 0 && j == 0 {
                    continue;
                }
                let s = center + Point::new(i as f64, j as f64) * (span / 2.0);
                let d = hausdorff_shifted(a, b, s);
                if d < best {
                    best = d;
                    best_shift = s;
                }
            }
        }
        span /= 5.0;
    }
    (best, best_shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_segment_distance() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(4.0, 0.0);
        assert_eq!(dist_inf_point_segment(Point::new(2.0, 3.0), a, b), 3.0);
        assert_eq!(dist_inf_point_segment(Point::new(6.0, 1.0), a, b), 2.0);
        // Diagonal segment: the ℓ∞ distance from (0,2) to the line y=x is 1.
        let d = dist_inf_point_segment(Point::new(0.0, 2.0), a, Point::new(4.0, 4.0));
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn brute_force_agrees() {
        let a = Point::new(-1.3, 0.7);
        let b = Point::new(2.2, -3.1);
        for p in [Point::new(0.0, 0.0), Point::new(3.0, 3.0), Point::new(-2.0, -5.0)] {
            let brute = (0..=100_000)
                .map(|i| (a.lerp(b, i as f64 / 100_000.0) - p).norm_inf())
                .fold(f64::INFINITY, f64::min);
            assert!((dist_inf_point_segment(p, a, b) - brute).abs() < 1e-4);
        }
    }

    #[test]
    fn crossings() {
        let c = proper_crossing(Point::new(0.0, 0.0), Point::new(2.0, 2.0), Point::new(0.0, 2.0), Point::new(2.0, 0.0));
        assert!(c.is_some());
        assert!(proper_crossing(Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0)).is_none());
        assert_eq!(signed_area(&[Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)]), 1.0);
    }

    fn sq(s: f64) -> Vec<Point> {
        vec![Point::new(0.0, 0.0), Point::new(s, 0.0), Point::new(s, s), Point::new(0.0, s)]
    }

    #[test]
    fn winding_of_square() {
        let q = sq(1.0);
        assert_eq!(winding_number(&q, Point::new(0.5, 0.5), 1e-12), Some(1));
        assert_eq!(winding_number(&q, Point::new(5.0, 0.5), 1e-12), Some(0));
        assert_eq!(winding_number(&q, Point::new(1.0, 0.5), 1e-12), None);
        let mut cw = q.clone();
        cw.reverse();
        assert_eq!(winding_number(&cw, Point::new(0.5, 0.5), 1e-12), Some(-1));
    }

    #[test]
    fn nested_squares_hausdorff() {
        let a = Prepared::region(&sq(1.0), 0.01);
        let b = Prepared::region(&sq(2.0), 0.01);
        assert!((hausdorff(&a, &b) - 1.0).abs() < 1e-9);
        assert_eq!(hausdorff(&a, &a), 0.0);
        let (d, _) = min_hausdorff_over_shifts(&a, &b, 1.0);
        assert!((d - 0.5).abs() < 0.02);
    }

    #[test]
    fn point_index_matches_brute_force() {
        let pts: Vec<Point> = (0..200).map(|i| Point::new((i * 37 % 101) as f64 * 0.3, (i * 53 % 97) as f64 * 0.2)).collect();
        let idx = PointIndex::new(&pts, 1.7);
        for q in [Point::new(3.3, 4.4), Point::new(-10.0, 2.0), Point::new(30.0, 30.0)] {
            let brute = pts.iter().map(|&p| (p - q).norm_inf()).fold(f64::INFINITY, f64::min);
            assert_eq!(idx.nearest(q), brute);
        }
    }
}
