use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::geom::{proper_crossing, segments_intersect, signed_area, Point};

/// A simple polygon with counter-clockwise vertices, stored without a
/// repeated endpoint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    /// Accepts counter-clockwise simple polygons of positive area.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(domain("a polygon needs at least three vertices"));
        }
        if signed_area(&vertices) <= 0.0 {
            return Err(domain("polygon must be counter-clockwise with positive area"));
        }
        let p = Polygon { vertices };
        if !p.is_simple() {
            return Err(domain("polygon is not simple"));
        }
        Ok(p)
    }

    pub(crate) fn new_unchecked(vertices: Vec<Point>) -> Self {
        Polygon { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn scaled(&self, s: f64) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(|&v| v * s).collect() }
    }

    pub fn translated(&self, t: Point) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(|&v| v + t).collect() }
    }

    pub fn centroid(&self) -> Point {
        let a = self.area();
        let mut c = Point::default();
        for (p, q) in self.edges() {
            let w = p.cross(q);
            c = c + (p + q) * w;
        }
        c * (1.0 / (6.0 * a))
    }

    /// Largest ℓ∞ distance between two vertices.
    pub fn diameter_inf(&self) -> f64 {
        let (mut lo, mut hi) = (Point::new(f64::INFINITY, f64::INFINITY), Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for v in &self.vertices {
            lo = Point::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        (hi.x - lo.x).max(hi.y - lo.y)
    }

    /// Convex with every turn counter-clockwise (collinear vertices allowed).
    pub fn is_convex(&self) -> bool {
        let n = self.vertices.len();
        let scale = self.diameter_inf().powi(2).max(f64::MIN_POSITIVE);
        (0..n).all(|i| {
            let (a, b, c) = (self.vertices[i], self.vertices[(i + 1) % n], self.vertices[(i + 2) % n]);
            (b - a).cross(c - b) >= -1e-12 * scale
        })
    }

    pub fn is_simple(&self) -> bool {
        let n = self.vertices.len();
        let e: Vec<(Point, Point)> = self.edges().collect();
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    // Adjacent edges may only share their common vertex.
                    if proper_crossing(e[i].0, e[i].1, e[j].0, e[j].1).is_some() {
                        return false;
                    }
                    continue;
                }
                if segments_intersect(e[i].0, e[i].1, e[j].0, e[j].1) {
                    return false;
                }
            }
        }
        true
    }

    /// Point-in-polygon test for convex polygons, boundary included.
    pub fn contains_convex(&self, p: Point, tol: f64) -> bool {
        self.edges().all(|(a, b)| (b - a).cross(p - a) >= -tol * (b - a).norm_l2())
    }
}

/// Clips a convex polygon by the half-plane `n·x <= c`.
pub(crate) fn clip(poly: &[Point], n: Point, c: f64) -> Vec<Point> {
    let m = poly.len();
    let mut out = Vec::with_capacity(m + 1);
    for i in 0..m {
        let (p, q) = (poly[i], poly[(i + 1) % m]);
        let (fp, fq) = (n.dot(p) - c, n.dot(q) - c);
        if fp <= 0.0 {
            out.push(p);
        }
        if (fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0) {
            out.push(p.lerp(q, fp / (fp - fq)));
        }
    }
    out
}

/// Drops repeated and collinear vertices.
pub(crate) fn tidy(pts: Vec<Point>, scale: f64) -> Vec<Point> {
    let tol = 1e-12 * scale.max(1e-300);
    let mut v: Vec<Point> = Vec::with_capacity(pts.len());
    for p in pts {
        if v.last().is_none_or(|&q: &Point| (p - q).norm_inf() > tol) {
            v.push(p);
        }
    }
    while v.len() > 1 && (v[0] - v[v.len() - 1]).norm_inf() <= tol {
        v.pop();
    }
    let mut changed = true;
    while changed && v.len() >= 3 {
        changed = false;
        let n = v.len();
        for i in 0..n {
            let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
            if (b - a).cross(c - b).abs() <= tol * scale {
                v.remove(i);
                changed = true;
                break;
            }
        }
    }
    v
}
