use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::geom::{self, proper_crossing, segments_intersect, Point};
use crate::wulff::NormHandle;

/// A polyline. Closed curves store each vertex once; the closing segment
/// from the last point back to the first is implicit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    points: Vec<Point>,
    closed: bool,
}

impl Curve {
    /// Builds a curve, dropping consecutive repeats (and, for closed curves,
    /// a trailing copy of the first point).
    pub fn new(points: Vec<Point>, closed: bool) -> Result<Self> {
        let mut v: Vec<Point> = Vec::with_capacity(points.len());
        for p in points {
            if !(p.x.is_finite() && p.y.is_finite()) {
                return Err(domain("curve points must be finite"));
            }
            if v.last() != Some(&p) {
                v.push(p);
            }
        }
        if closed {
            while v.len() > 1 && v[0] == v[v.len() - 1] {
                v.pop();
            }
        }
        if v.is_empty() {
            return Err(domain("a curve needs at least one point"));
        }
        Ok(Curve { points: v, closed })
    }

    pub fn closed(points: Vec<Point>) -> Result<Self> {
        Curve::new(points, true)
    }

    pub fn open(points: Vec<Point>) -> Result<Self> {
        Curve::new(points, false)
    }

    /// Regular `m`-gon inscribed in the circle of radius `r` about `c`.
    pub fn circle(c: Point, r: f64, m: usize) -> Self {
        let pts = (0..m)
            .map(|i| {
                let (s, co) = (2.0 * PI * i as f64 / m as f64).sin_cos();
                c + Point::new(co, s) * r
            })
            .collect();
        Curve { points: pts, closed: true }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Vertices in traversal order, with the first repeated at the end for
    /// closed curves.
    pub fn path_points(&self) -> Vec<Point> {
        if self.closed {
            geom::closed(&self.points)
        } else {
            self.points.clone()
        }
    }

    pub fn segments(&self) -> Vec<(Point, Point)> {
        self.path_points().windows(2).map(|w| (w[0], w[1])).collect()
    }

    pub fn length(&self, norm: &NormHandle) -> f64 {
        self.segments().iter().map(|&(a, b)| norm.eval(b - a)).sum()
    }

    pub fn length_inf(&self) -> f64 {
        self.segments().iter().map(|&(a, b)| (b - a).norm_inf()).sum()
    }

    /// ℓ∞ diameter.
    pub fn diameter(&self) -> f64 {
        let (lo, hi) = geom::bounding_box(&self.points);
        (hi - lo).norm_inf()
    }

    pub fn scaled(&self, s: f64) -> Curve {
        Curve { points: self.points.iter().map(|&p| p * s).collect(), closed: self.closed }
    }

    pub fn translated(&self, t: Point) -> Curve {
        Curve { points: self.points.iter().map(|&p| p + t).collect(), closed: self.closed }
    }

    pub fn reversed(&self) -> Curve {
        let mut p = self.points.clone();
        p.reverse();
        Curve { points: p, closed: self.closed }
    }

    pub fn signed_area(&self) -> f64 {
        geom::signed_area(&self.points)
    }

    /// No two non-adjacent segments meet, and adjacent ones share only
    /// their common vertex.
    pub fn is_simple(&self) -> bool {
        let seg = self.segments();
        let n = seg.len();
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (self.closed && i == 0 && j == n - 1);
                if adjacent {
                    let (a, b) = seg[i];
                    let (c, d) = seg[j];
                    if proper_crossing(a, b, c, d).is_some() || collinear_overlap(a, b, c, d) {
                        return false;
                    }
                } else if segments_intersect(seg[i].0, seg[i].1, seg[j].0, seg[j].1) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether a closed curve bounds a convex region (either orientation).
    pub fn is_convex(&self) -> bool {
        if !self.closed || self.points.len() < 3 {
            return false;
        }
        let s = if self.signed_area() >= 0.0 { 1.0 } else { -1.0 };
        let n = self.points.len();
        let tol = 1e-12 * self.diameter().powi(2);
        (0..n).all(|i| {
            let (a, b, c) = (self.points[i], self.points[(i + 1) % n], self.points[(i + 2) % n]);
            s * (b - a).cross(c - b) >= -tol
        }) && self.is_simple()
    }
}

fn collinear_overlap(a: Point, b: Point, c: Point, d: Point) -> bool {
    let r = b - a;
    if r.cross(c - a).abs() > 1e-12 * r.norm_l2() || r.cross(d - a).abs() > 1e-12 * r.norm_l2() {
        return false;
    }
    let t = |p: Point| (p - a).dot(r) / r.dot(r);
    let (t0, t1) = (t(c).min(t(d)), t(c).max(t(d)));
    let lo = t0.max(0.0);
    let hi = t1.min(1.0);
    hi - lo > 1e-12
}

/// The r-polygonal approximation: march along the curve, emitting a new
/// vertex each time the curve first leaves the ℓ∞ ball of radius `r` about
/// the previous vertex, and finish at the curve's end point.
pub fn poly_approx(curve: &Curve, r: f64) -> Result<Curve> {
    if !(r > 0.0) {
        return Err(domain("r must be positive"));
    }
    let pts = curve.path_points();
    let mut out = vec![pts[0]];
    let mut last = pts[0];
    let mut seg = 0;
    let mut t0 = 0.0;
    while seg + 1 < pts.len() {
        let (a, b) = (pts[seg], pts[seg + 1]);
        match exit_param(a, b, last, r, t0) {
            Some(t) => {
                let x = a.lerp(b, t);
                out.push(x);
                last = x;
                t0 = t;
            }
            None => {
                seg += 1;
                t0 = 0.0;
            }
        }
    }
    let end = *pts.last().unwrap();
    if *out.last().unwrap() != end {
        out.push(end);
    }
    if curve.closed {
        // The march ends at the starting point, which is stored once.
        out.pop();
        if out.is_empty() {
            out.push(pts[0]);
        }
    }
    Curve::new(out, curve.closed)
}

/// Smallest `t > t0` on `[a, b]` with `‖a + t(b−a) − c‖∞ > r`-boundary
/// crossing, i.e. the first exit from the closed ball.
fn exit_param(a: Point, b: Point, c: Point, r: f64, t0: f64) -> Option<f64> {
    let d = b - a;
    let mut best: Option<f64> = None;
    for (u, du) in [(a.x - c.x, d.x), (a.y - c.y, d.y)] {
        if du == 0.0 {
            continue;
        }
        for target in [r, -r] {
            let t = (target - u) / du;
            // Leaving means the coordinate moves outward through ±r.
            if t > t0 + 1e-15 && t <= 1.0 && du * target > 0.0 {
                let p = a.lerp(b, t);
                if (p - c).norm_inf() <= r * (1.0 + 1e-12) {
                    best = Some(best.map_or(t, |x: f64| x.min(t)));
                }
            }
        }
    }
    best
}

/// On-curve test result or winding number of a closed curve about a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Winding {
    OnCurve,
    Around(i32),
}

pub fn winding_number(curve: &Curve, x: Point) -> Winding {
    match geom::winding_number(&curve.points, x, 1e-12) {
        None => Winding::OnCurve,
        Some(w) => Winding::Around(w),
    }
}

/// Membership in `hull(λ)`: on the curve or of odd winding.
pub fn in_hull(curve: &Curve, x: Point) -> bool {
    match winding_number(curve, x) {
        Winding::OnCurve => true,
        Winding::Around(w) => w % 2 != 0,
    }
}

/// Exact area of the region where a point is crossed an odd number of
/// times by the given segments, by decomposition into horizontal slabs
/// free of crossings.
pub fn odd_area(segments: &[(Point, Point)]) -> f64 {
    let segs: Vec<(Point, Point)> = segments.iter().copied().filter(|(a, b)| a.y != b.y).collect();
    let mut ys: Vec<f64> = segs.iter().flat_map(|(a, b)| [a.y, b.y]).collect();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if let Some((p, _, _)) = proper_crossing(segs[i].0, segs[i].1, segs[j].0, segs[j].1) {
                ys.push(p.y);
            }
        }
    }
    ys.sort_by(f64::total_cmp);
    ys.dedup();
    let x_at = |(a, b): (Point, Point), y: f64| a.x + (b.x - a.x) * (y - a.y) / (b.y - a.y);
    let mut area = 0.0;
    let mut active: Vec<(f64, f64, f64)> = Vec::new();
    for w in ys.windows(2) {
        let (y0, y1) = (w[0], w[1]);
        let ym = 0.5 * (y0 + y1);
        active.clear();
        for &s in &segs {
            let (lo, hi) = (s.0.y.min(s.1.y), s.0.y.max(s.1.y));
            if lo <= y0 && hi >= y1 {
                active.push((x_at(s, ym), x_at(s, y0), x_at(s, y1)));
            }
        }
        active.sort_by(|a, b| a.0.total_cmp(&b.0));
        for pair in active.chunks_exact(2) {
            let width0 = pair[1].1 - pair[0].1;
            let width1 = pair[1].2 - pair[0].2;
            area += 0.5 * (width0 + width1) * (y1 - y0);
        }
    }
    area
}

/// `Leb(hull(λ))` for a closed curve.
pub fn hull_area(curve: &Curve) -> f64 {
    odd_area(&curve.segments())
}

/// Area of the symmetric difference of the hulls of two closed curves.
pub fn symmetric_difference_area(a: &Curve, b: &Curve) -> f64 {
    let mut s = a.segments();
    s.extend(b.segments());
    odd_area(&s)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn unit_square() -> Curve {
        Curve::closed(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)]).unwrap()
    }

    pub(crate) fn figure_eight() -> Curve {
        Curve::closed(vec![Point::new(0.0, 0.0), Point::new(2.0, 2.0), Point::new(2.0, 0.0), Point::new(0.0, 2.0)]).unwrap()
    }

    #[test]
    fn square_windings() {
        let s = unit_square();
        assert_eq!(winding_number(&s, Point::new(0.5, 0.5)), Winding::Around(1));
        assert_eq!(winding_number(&s, Point::new(9.0, 9.0)), Winding::Around(0));
        assert_eq!(winding_number(&s, Point::new(0.0, 0.5)), Winding::OnCurve);
    }

    #[test]
    fn figure_eight_hull() {
        let f = figure_eight();
        assert!(!f.is_simple());
        assert!(in_hull(&f, Point::new(0.2, 1.0)));
        assert!(in_hull(&f, Point::new(1.8, 1.0)));
        assert!(!in_hull(&f, Point::new(1.0, 0.2)));
        assert!(!in_hull(&f, Point::new(5.0, 1.0)));
        assert!((hull_area(&f) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn square_approximation() {
        let p = poly_approx(&unit_square(), 0.5).unwrap();
        assert_eq!(p.len(), 8);
        assert!((hull_area(&p) - 1.0).abs() < 1e-12);
        let coarse = poly_approx(&unit_square(), 5.0).unwrap();
        assert_eq!(coarse.len(), 1);
    }

    #[test]
    fn slab_area_matches_shoelace() {
        let c = Curve::circle(Point::new(0.3, -0.2), 2.0, 97);
        assert!((hull_area(&c) - c.signed_area()).abs() < 1e-12);
        let moved = c.translated(Point::new(0.5, 0.0));
        let sd = symmetric_difference_area(&c, &moved);
        assert!(sd > 0.0 && sd < 2.0 * c.signed_area());
        assert!(symmetric_difference_area(&c, &c) < 1e-12);
    }
}
