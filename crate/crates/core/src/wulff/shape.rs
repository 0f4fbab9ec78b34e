use std::f64::consts::PI;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::polygon::{clip, tidy, Polygon};
use crate::error::{domain, Error, Result};
use crate::geom::{min_hausdorff_over_shifts, signed_area, Point, Prepared};
use crate::norm::{dihedral_images, NormTable};
use crate::rng::{self, Stream};

/// Directions used when a norm has no sampled directions of its own.
pub const DEFAULT_DIRECTIONS: usize = 360;

/// A norm on the plane.
#[derive(Clone, Debug, PartialEq)]
pub enum NormHandle {
    L1,
    L2,
    Linf,
    Table(Arc<NormTable>),
    /// The gauge (Minkowski functional) of a convex polygon around 0.
    Gauge(Arc<Polygon>),
}

impl NormHandle {
    /// Parses `l1`, `l2`, `linf` or `table:<path>`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "l1" => Ok(NormHandle::L1),
            "l2" => Ok(NormHandle::L2),
            "linf" => Ok(NormHandle::Linf),
            _ => match s.strip_prefix("table:") {
                Some(p) => Ok(NormHandle::Table(Arc::new(NormTable::load(Path::new(p))?))),
                None => Err(domain(format!("unknown norm '{s}' (expected l1, l2, linf or table:<path>)"))),
            },
        }
    }

    pub fn label(&self) -> String {
        match self {
            NormHandle::L1 => "l1".into(),
            NormHandle::L2 => "l2".into(),
            NormHandle::Linf => "linf".into(),
            NormHandle::Table(_) => "table".into(),
            NormHandle::Gauge(_) => "gauge".into(),
        }
    }

    pub fn eval(&self, v: Point) -> f64 {
        match self {
            NormHandle::L1 => v.norm_l1(),
            NormHandle::L2 => v.norm_l2(),
            NormHandle::Linf => v.norm_inf(),
            NormHandle::Table(t) => t.eval(v.x, v.y),
            NormHandle::Gauge(p) => gauge(p, v),
        }
    }

    /// Normals used for the half-plane construction. Tables contribute the
    /// eight images of each sampled direction and nothing else, so no
    /// interpolated value enters the shape.
    pub fn normals(&self, k: usize) -> Vec<Point> {
        match self {
            NormHandle::Table(t) => {
                let mut v: Vec<(f64, Point)> = Vec::new();
                for e in t.entries() {
                    for (x, y) in dihedral_images((e.dir_x, e.dir_y)) {
                        let a = y.atan2(x).rem_euclid(2.0 * PI);
                        v.push((a, Point::new(x, y)));
                    }
                }
                v.sort_by(|a, b| a.0.total_cmp(&b.0));
                v.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-12 || (2.0 * PI - (a.0 - b.0).abs()) < 1e-12);
                v.into_iter().map(|(_, p)| p).collect()
            }
            _ => (0..k)
                .map(|j| {
                    let (s, c) = (2.0 * PI * j as f64 / k as f64).sin_cos();
                    Point::new(c, s)
                })
                .collect(),
        }
    }
}

fn gauge(p: &Polygon, v: Point) -> f64 {
    let mut g: f64 = 0.0;
    for (a, b) in p.edges() {
        let n = Point::new(b.y - a.y, a.x - b.x);
        let c = n.dot(a);
        g = g.max(n.dot(v) / c);
    }
    g
}

/// ρ-length of a polyline: the sum of the norm over consecutive differences.
pub fn len_rho(pts: &[Point], norm: &NormHandle) -> f64 {
    pts.windows(2).map(|w| norm.eval(w[1] - w[0])).sum()
}

/// ρ-length of a closed polygon given without its repeated endpoint.
pub fn len_rho_closed(pts: &[Point], norm: &NormHandle) -> f64 {
    let n = pts.len();
    (0..n).map(|i| norm.eval(pts[(i + 1) % n] - pts[i])).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct WulffShape {
    pub norm: NormHandle,
    pub raw: Polygon,
    pub area_raw: f64,
    pub normalized: Polygon,
    pub phi: f64,
    /// Largest `r` with `B₁(r) ⊆ Ŵ`.
    pub r_inner: f64,
    /// Smallest `r` with `Ŵ ⊆ B∞(r)`.
    pub r_outer: f64,
    pub directions: usize,
}

#[derive(Serialize, Deserialize)]
struct WulffJson {
    norm: String,
    directions: usize,
    area_raw: f64,
    phi: f64,
    r_inner_outer: [f64; 2],
    vertices_raw: Vec<Point>,
    vertices_normalized: Vec<Point>,
}

impl WulffShape {
    /// Whether some `r` satisfies `B₁(r) ⊆ Ŵ ⊆ B∞(r)` up to `slack`.
    pub fn sandwich_holds(&self, slack: f64) -> bool {
        self.r_outer <= self.r_inner + slack
    }

    /// The dual norm at `y`: the gauge of `W`, whose unit ball is `W`.
    pub fn dual_eval(&self, y: Point) -> f64 {
        gauge(&self.raw, y)
    }

    pub fn to_json(&self) -> Result<String> {
        let j = WulffJson {
            norm: self.norm.label(),
            directions: self.directions,
            area_raw: self.area_raw,
            phi: self.phi,
            r_inner_outer: [self.r_inner, self.r_outer],
            vertices_raw: self.raw.vertices().to_vec(),
            vertices_normalized: self.normalized.vertices().to_vec(),
        };
        Ok(serde_json::to_string_pretty(&j)?)
    }

    /// SVG of `Ŵ` with the sandwich boxes `B₁(r)` and `B∞(r)` as overlays.
    pub fn to_svg(&self) -> String {
        let s = 200.0;
        let r = self.r_outer;
        let pts = |v: &[Point]| {
            v.iter().map(|p| format!("{:.6},{:.6}", p.x * s, -p.y * s)).collect::<Vec<_>>().join(" ")
        };
        let l1 = [Point::new(r, 0.0), Point::new(0.0, r), Point::new(-r, 0.0), Point::new(0.0, -r)];
        let linf = [Point::new(r, r), Point::new(-r, r), Point::new(-r, -r), Point::new(r, -r)];
        let half = s * (r + 0.1);
        format!(
            concat!(
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.3} {:.3} {:.3} {:.3}\">\n",
                "<g id=\"linf-ball\"><polygon points=\"{}\" fill=\"none\" stroke=\"#999\" stroke-dasharray=\"4 3\"/></g>\n",
                "<g id=\"l1-ball\"><polygon points=\"{}\" fill=\"none\" stroke=\"#999\" stroke-dasharray=\"2 2\"/></g>\n",
                "<g id=\"wulff\"><polygon points=\"{}\" fill=\"#cde\" stroke=\"#036\"/></g>\n",
                "</svg>\n"
            ),
            -half,
            -half,
            2.0 * half,
            2.0 * half,
            pts(&linf),
            pts(&l1),
            pts(self.normalized.vertices()),
        )
    }
}

/// Intersects the half-planes `n̂·x ≤ β(n̂)` over the normals of `norm`.
pub fn build_wulff(norm: &NormHandle, k: usize) -> Result<WulffShape> {
    if k < 8 {
        return Err(domain("need at least 8 directions"));
    }
    let normals = norm.normals(k);
    let values: Vec<f64> = normals.iter().map(|&n| norm.eval(n)).collect();
    let bad: Vec<String> = normals
        .iter()
        .zip(&values)
        .filter(|(_, &v)| !(v > 0.0 && v.is_finite()))
        .map(|(n, _)| format!("({:.4},{:.4})", n.x, n.y))
        .collect();
    if !bad.is_empty() {
        return Err(Error::Degenerate(format!("norm is not positive along {}", bad.join(", "))));
    }
    let mut angles: Vec<f64> = normals.iter().map(|n| n.y.atan2(n.x)).collect();
    angles.sort_by(f64::total_cmp);
    let gap = angles
        .windows(2)
        .map(|w| w[1] - w[0])
        .chain(std::iter::once(angles[0] + 2.0 * PI - angles[angles.len() - 1]))
        .fold(0.0, f64::max);
    if gap >= PI - 1e-9 {
        return Err(Error::Degenerate("directions leave an open half-plane uncovered".into()));
    }
    let vmax = values.iter().cloned().fold(0.0, f64::max);
    let m = 2.0 * vmax / (gap / 2.0).cos();
    let mut poly = vec![Point::new(-m, -m), Point::new(m, -m), Point::new(m, m), Point::new(-m, m)];
    for (&n, &c) in normals.iter().zip(&values) {
        poly = clip(&poly, n, c);
        if poly.len() < 3 {
            return Err(Error::Degenerate(format!("empty interior after clipping by ({:.4},{:.4})", n.x, n.y)));
        }
    }
    let poly = tidy(poly, vmax);
    if poly.len() < 3 || poly.iter().any(|p| p.norm_inf() >= m * (1.0 - 1e-12)) {
        return Err(Error::Degenerate("half-plane intersection is degenerate".into()));
    }
    let area_raw = signed_area(&poly);
    if !(area_raw > 0.0) {
        return Err(Error::Degenerate("half-plane intersection has no interior".into()));
    }
    let raw = Polygon::new_unchecked(poly);
    let normalized = raw.scaled(1.0 / area_raw.sqrt());
    let phi = len_rho_closed(normalized.vertices(), norm);
    let r_outer = normalized.vertices().iter().map(|p| p.norm_inf()).fold(0.0, f64::max);
    let r_inner = normalized
        .edges()
        .map(|(a, b)| {
            let n = Point::new(b.y - a.y, a.x - b.x);
            n.dot(a) / n.norm_inf()
        })
        .fold(f64::INFINITY, f64::min);
    Ok(WulffShape { norm: norm.clone(), raw, area_raw, normalized, phi, r_inner, r_outer, directions: normals.len() })
}

/// Dual norm `sup{x·y : β(x) ≤ 1}`, evaluated as the gauge of `W`.
pub fn dual_norm_eval(norm: &NormHandle, y: Point) -> Result<f64> {
    Ok(build_wulff(norm, DEFAULT_DIRECTIONS)?.dual_eval(y))
}

/// A closed polygon approximating the ellipse with semi-axes `a`, `b`,
/// rotated by `theta`, rescaled to enclose exactly unit area.
pub fn unit_area_ellipse(a: f64, b: f64, theta: f64, points: usize) -> Vec<Point> {
    let (s, c) = theta.sin_cos();
    let pts: Vec<Point> = (0..points)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / points as f64;
            let (x, y) = (a * t.cos(), b * t.sin());
            Point::new(c * x - s * y, s * x + c * y)
        })
        .collect();
    let k = 1.0 / signed_area(&pts).sqrt();
    pts.into_iter().map(|p| p * k).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariationalReport {
    pub phi: f64,
    pub competitors: usize,
    pub best_competitor: f64,
    /// Competitors shorter than `phi − 1e-6`.
    pub violations: usize,
}

/// `φ = len_β(∂Ŵ)`, spot-checked against random unit-area ellipses.
pub fn variational_phi(norm: &NormHandle, k: usize, seed: u64) -> Result<VariationalReport> {
    let shape = build_wulff(norm, k)?;
    let mut rs = Stream::new(seed, rng::tag::SHAPE);
    let competitors = 200;
    let mut best = f64::INFINITY;
    let mut violations = 0;
    for _ in 0..competitors {
        let a = (2.0 * rs.next_f64() - 1.0).exp();
        let theta = PI * rs.next_f64();
        let e = unit_area_ellipse(a, 1.0 / a, theta, 720);
        let l = len_rho_closed(&e, norm);
        best = best.min(l);
        if l < shape.phi - 1e-6 {
            violations += 1;
        }
    }
    Ok(VariationalReport { phi: shape.phi, competitors, best_competitor: best, violations })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BonnesenReport {
    pub length: f64,
    pub phi: f64,
    /// `sqrt(max(0, len² − φ²)) / φ²`.
    pub raw_excess: f64,
    /// Measured `inf_ξ d_H(ξ + int λ, Ŵ)`.
    pub distance: f64,
    pub shift: Point,
}

/// Isoperimetric deficiency of a simple closed polygon of unit area.
pub fn bonnesen_deficiency(lambda: &[Point], shape: &WulffShape) -> Result<BonnesenReport> {
    let area = signed_area(lambda).abs();
    if (area - 1.0).abs() > 1e-6 {
        return Err(domain(format!("curve must enclose unit area, got {area}")));
    }
    if !is_simple_closed(lambda) {
        return Err(domain("curve is not simple"));
    }
    let length = len_rho_closed(lambda, &shape.norm);
    let phi = shape.phi;
    let raw_excess = (length * length - phi * phi).max(0.0).sqrt() / (phi * phi);
    let step = 0.01;
    let a = Prepared::region(lambda, step);
    let b = Prepared::region(shape.normalized.vertices(), step);
    let (distance, shift) = min_hausdorff_over_shifts(&a, &b, 0.25);
    Ok(BonnesenReport { length, phi, raw_excess, distance, shift })
}

fn is_simple_closed(pts: &[Point]) -> bool {
    let mut v = pts.to_vec();
    if signed_area(&v) < 0.0 {
        v.reverse();
    }
    v.len() >= 3 && Polygon::new_unchecked(v).is_simple()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn l1_golden() {
        let w = build_wulff(&NormHandle::L1, 8).unwrap();
        assert_eq!(w.raw.len(), 4);
        assert!((w.area_raw - 4.0).abs() < 1e-12);
        assert!((w.phi - 4.0).abs() < 1e-9);
        assert!((w.r_outer - 0.5).abs() < 1e-12);
        assert!(w.sandwich_holds(1e-12));
    }

    #[test]
    fn linf_golden() {
        let w = build_wulff(&NormHandle::Linf, 8).unwrap();
        assert!((w.phi - 2.0 * SQRT_2).abs() < 1e-9);
        assert!((w.r_outer - 1.0 / SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn l2_golden() {
        let w = build_wulff(&NormHandle::L2, 360).unwrap();
        assert!((w.phi - 2.0 * PI.sqrt()).abs() < 1e-3);
        assert!((w.normalized.area() - 1.0).abs() < 1e-9);
        assert!(w.normalized.is_convex());
    }

    #[test]
    fn dual_of_l1_is_linf() {
        assert!((dual_norm_eval(&NormHandle::L1, Point::new(3.0, -2.0)).unwrap() - 3.0).abs() < 1e-9);
        assert_eq!(dual_norm_eval(&NormHandle::L1, Point::default()).unwrap(), 0.0);
    }

    #[test]
    fn too_few_directions() {
        assert!(build_wulff(&NormHandle::L2, 4).is_err());
    }

    #[test]
    fn minimality_spot_check() {
        for norm in [NormHandle::L1, NormHandle::L2, NormHandle::Linf] {
            let r = variational_phi(&norm, 360, 3).unwrap();
            assert_eq!(r.violations, 0, "{norm:?}");
        }
    }

    #[test]
    fn bonnesen_of_the_minimizer() {
        let w = build_wulff(&NormHandle::L1, 8).unwrap();
        let r = bonnesen_deficiency(w.normalized.vertices(), &w).unwrap();
        assert!(r.raw_excess < 1e-6);
        assert!(r.distance < 1e-6);
    }

    #[test]
    fn bonnesen_of_a_disc_under_l1() {
        let w = build_wulff(&NormHandle::L1, 8).unwrap();
        let disc = unit_area_ellipse(1.0, 1.0, 0.0, 720);
        let r = bonnesen_deficiency(&disc, &w).unwrap();
        let l = 8.0 / PI.sqrt();
        assert!((r.length - l).abs() < 1e-3);
        assert!((r.raw_excess - (l * l - 16.0).sqrt() / 16.0).abs() < 1e-3);
        assert!(r.distance > 0.01);
    }
}
