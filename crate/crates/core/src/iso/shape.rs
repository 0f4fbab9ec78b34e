use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::geom::{min_hausdorff_over_shifts, Point, Prepared};
use crate::lattice::Site;
use crate::wulff::{Polygon, WulffShape};

/// How a discrete set is rescaled before comparison with the Wulff shape.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeScale {
    /// `U/n` against `√2·Ŵ`.
    Cheeger { n: usize },
    /// `U/√v` against `θ^{−1/2}·Ŵ`.
    Profile { volume: usize, theta: f64 },
}

impl ShapeScale {
    fn factors(self) -> (f64, f64) {
        match self {
            ShapeScale::Cheeger { n } => (n as f64, 2f64.sqrt()),
            ShapeScale::Profile { volume, theta } => ((volume as f64).sqrt(), 1.0 / theta.sqrt()),
        }
    }

    /// The rescaled reference shape.
    pub fn target(self, shape: &WulffShape) -> Polygon {
        shape.normalized.scaled(self.factors().1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShapeDistance {
    /// `inf_ξ d_H(U/s, ξ + cŴ)`, approximately.
    pub distance: f64,
    /// ℓ∞ diameter of the reference shape.
    pub diameter: f64,
    pub relative: f64,
    pub shift: Point,
}

/// ℓ∞ Hausdorff distance from the rescaled set to the best translate of the
/// rescaled Wulff shape. The shape is sampled at 1/100 of its diameter.
pub fn shape_distance(sites: &[Site], shape: &WulffShape, scale: ShapeScale) -> Result<ShapeDistance> {
    if sites.is_empty() {
        return Err(domain("shape distance of an empty set"));
    }
    let (s, _) = scale.factors();
    if !(s > 0.0) {
        return Err(domain("scale must be positive"));
    }
    let pts: Vec<Point> = sites.iter().map(|&x| Point::from(x) * (1.0 / s)).collect();
    let target = scale.target(shape);
    let diameter = target.diameter_inf();
    let a = Prepared::points(&pts);
    let b = Prepared::region(target.vertices(), diameter / 100.0);
    let (distance, shift) = min_hausdorff_over_shifts(&a, &b, 0.25 * diameter);
    Ok(ShapeDistance { distance, diameter, relative: distance / diameter, shift })
}

/// SVG picture of the rescaled set over `shift + cŴ`, in rescaled units.
pub fn overlay_svg(sites: &[Site], shape: &WulffShape, scale: ShapeScale, shift: Point) -> String {
    use std::fmt::Write;
    let (s, _) = scale.factors();
    let target = scale.target(shape).translated(shift);
    let ext = sites
        .iter()
        .map(|&x| Point::from(x).norm_inf() / s)
        .chain(target.vertices().iter().map(|v| v.norm_inf()))
        .fold(0.0, f64::max)
        + 0.1;
    let px = 400.0 / (2.0 * ext);
    let map = |p: Point| ((p.x + ext) * px, (ext - p.y) * px);
    let mut out = String::from("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n");
    let cell = px / s;
    for &x in sites {
        let (cx, cy) = map(Point::from(x) * (1.0 / s));
        let _ = writeln!(
            out,
            "<rect x=\"{:.3}\" y=\"{:.3}\" width=\"{:.3}\" height=\"{:.3}\" fill=\"#4a7ab5\"/>",
            cx - cell / 2.0,
            cy - cell / 2.0,
            cell,
            cell
        );
    }
    let pts: Vec<String> = target.vertices().iter().map(|&v| {
        let (x, y) = map(v);
        format!("{x:.3},{y:.3}")
    }).collect();
    let _ = writeln!(out, "<polygon points=\"{}\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"/>", pts.join(" "));
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wulff::{build_wulff, NormHandle};

    fn lattice_points_of(poly: &Polygon, s: f64) -> Vec<Site> {
        let r = (poly.diameter_inf() * s).ceil() as i32 + 1;
        let mut out = Vec::new();
        for x in -r..=r {
            for y in -r..=r {
                if poly.contains_convex(Point::new(x as f64, y as f64) * (1.0 / s), 1e-12) {
                    out.push(Site::new(x, y));
                }
            }
        }
        out
    }

    #[test]
    fn recovers_its_own_shape() {
        let shape = build_wulff(&NormHandle::L2, 360).unwrap();
        let mut last = f64::INFINITY;
        for v in [100, 400] {
            let sc = ShapeScale::Profile { volume: v, theta: 1.0 };
            let u = lattice_points_of(&sc.target(&shape), (v as f64).sqrt());
            let d = shape_distance(&u, &shape, sc).unwrap();
            assert!(d.distance < last);
            last = d.distance;
        }
        assert!(last < 0.1);
    }

    #[test]
    fn thin_rectangle_is_far() {
        let shape = build_wulff(&NormHandle::L1, 8).unwrap();
        let n = 64;
        let vol = 2 * n * n;
        let u: Vec<Site> = (0..vol as i32).map(|x| Site::new(x, 0)).collect();
        let d = shape_distance(&u, &shape, ShapeScale::Cheeger { n }).unwrap();
        assert!(d.relative > 0.3);
    }
}
