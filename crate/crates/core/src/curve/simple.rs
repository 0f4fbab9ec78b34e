use serde::{Deserialize, Serialize};

use super::base::{symmetric_difference_area, Curve};
use crate::error::{domain, Error, Result};
use crate::geom::{dist_inf_point_segment, hausdorff, proper_crossing, Point, Prepared};
use crate::rng::{self, Stream};
use crate::wulff::NormHandle;

/// Crossings resolved before giving up.
pub const CROSSING_BUDGET: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimpleReport {
    pub crossings_resolved: usize,
    pub nudged: bool,
    /// `d_H(hull(λ), int(λ'))`, sampled on a grid of spacing `diam/200`.
    pub hausdorff: f64,
    /// `Leb(hull(λ) △ int(λ'))`, exact.
    pub area_delta: f64,
    /// `len_ρ(λ') − len_ρ(λ)`.
    pub length_delta: f64,
}

fn curve_hash(pts: &[Point]) -> u64 {
    pts.iter().fold(0x9e37_79b9_7f4a_7c15, |h, p| rng::hash3(h, p.x.to_bits(), p.y.to_bits()))
}

/// Moves every vertex by at most `1e-9·diam`, deterministically.
fn nudge(pts: &[Point], diam: f64) -> Vec<Point> {
    let mut s = Stream::new(curve_hash(pts), rng::tag::NUDGE);
    let a = 1e-9 * diam.max(1e-300);
    pts.iter().map(|&p| p + Point::new(a * (2.0 * s.next_f64() - 1.0), a * (2.0 * s.next_f64() - 1.0))).collect()
}

fn first_crossing(p: &[Point]) -> Option<(usize, usize, Point)> {
    let n = p.len();
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if let Some((x, _, _)) = proper_crossing(p[i], p[(i + 1) % n], p[j], p[(j + 1) % n]) {
                return Some((i, j, x));
            }
        }
    }
    None
}

/// Reconnects the crossing of segments `i` and `j` at `x` so the curve stays
/// a single closed curve: the stretch between the two segments is traversed
/// backwards and the crossing is split into two nearby corners.
fn uncross(p: &[Point], i: usize, j: usize, x: Point, eps: f64) -> Vec<Point> {
    let n = p.len();
    let (a, b, c, d) = (p[i], p[i + 1], p[j], p[(j + 1) % n]);
    let mut room = [a, b, c, d].iter().map(|&q| (q - x).norm_inf()).fold(f64::INFINITY, f64::min);
    for k in 0..n {
        if k != i && k != j {
            room = room.min(dist_inf_point_segment(x, p[k], p[(k + 1) % n]));
        }
    }
    let delta = (eps / 8.0).min(room / 4.0);
    let dir = |u: Point, v: Point| ((u - x).unit() + (v - x).unit()).unit();
    let z1 = x + dir(a, c) * delta;
    let z2 = x + dir(b, d) * delta;
    let mut out = Vec::with_capacity(n + 2);
    out.extend_from_slice(&p[..=i]);
    out.push(z1);
    out.extend(p[i + 1..=j].iter().rev());
    out.push(z2);
    out.extend_from_slice(&p[j + 1..]);
    out
}

/// Removes self-crossings from a closed polygonal curve by local
/// reconnection, keeping the region of odd winding up to `ε`.
pub fn make_simple(curve: &Curve, eps: f64, norm: &NormHandle) -> Result<(Curve, SimpleReport)> {
    if !curve.is_closed() {
        return Err(domain("make_simple needs a closed curve"));
    }
    if !(eps > 0.0) {
        return Err(domain("epsilon must be positive"));
    }
    if curve.is_simple() {
        let report = SimpleReport { crossings_resolved: 0, nudged: false, hausdorff: 0.0, area_delta: 0.0, length_delta: 0.0 };
        return Ok((curve.clone(), report));
    }
    let diam = curve.diameter();
    let mut pts = nudge(curve.points(), diam);
    let mut resolved = 0;
    while let Some((i, j, x)) = first_crossing(&pts) {
        if resolved == CROSSING_BUDGET {
            return Err(Error::Budget { budget: CROSSING_BUDGET as u64, context: "make_simple crossings".into() });
        }
        pts = uncross(&pts, i, j, x, eps);
        resolved += 1;
    }
    let out = Curve::closed(pts)?;
    if !out.is_simple() {
        return Err(Error::Degenerate("curve still touches itself after removing crossings".into()));
    }
    let step = (diam / 200.0).max(1e-9);
    let report = SimpleReport {
        crossings_resolved: resolved,
        nudged: true,
        hausdorff: hausdorff(&Prepared::region(curve.points(), step), &Prepared::region(out.points(), step)),
        area_delta: symmetric_difference_area(curve, &out),
        length_delta: out.length(norm) - curve.length(norm),
    };
    Ok((out, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::base::hull_area;

    #[test]
    fn simple_curves_pass_through() {
        let c = Curve::circle(Point::default(), 1.0, 50);
        let (d, r) = make_simple(&c, 0.1, &NormHandle::L2).unwrap();
        assert_eq!(d, c);
        assert_eq!(r.area_delta, 0.0);
    }

    #[test]
    fn figure_eight_becomes_simple() {
        let f = Curve::closed(vec![Point::new(0.0, 0.0), Point::new(2.0, 2.0), Point::new(2.0, 0.0), Point::new(0.0, 2.0)]).unwrap();
        let (s, r) = make_simple(&f, 0.1, &NormHandle::L2).unwrap();
        assert!(s.is_simple());
        assert_eq!(r.crossings_resolved, 1);
        assert!(r.area_delta < 0.1);
        assert!(r.hausdorff < 0.1);
        assert!(r.length_delta.abs() <= 0.1);
        assert!((hull_area(&s) - 2.0).abs() < 0.1);
    }
}
