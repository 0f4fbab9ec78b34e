use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::base::{hull_area, poly_approx, Curve};
use super::region::{hausdorff, is_counterclockwise, outer_boundary_circuit, vol, DiscreteRegion, SetRef};
use super::simple::{make_simple, SimpleReport};
use crate::error::{domain, Error, Result};
use crate::geom::Point;
use crate::lattice::{EdgeKey, Site};
use crate::paths::{is_open_path, is_rightmost, path_costs, star_concat, subdivided_path, LatticePath};
use crate::percolation::{anchor, margin, ClusterLabeling, Configuration};
use crate::wulff::NormHandle;

/// How the chord length of the polygonal approximation is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChordRule {
    /// `max(2, ⌈|γ|^{1/4}⌉)`.
    Default,
    /// `⌈R^{1/100}⌉` for the given box radius `R`.
    Asymptotic { box_radius: i32 },
    Fixed(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitToCurveOptions {
    pub chord: ChordRule,
    /// Reject circuits violating the size and shape premises.
    pub enforce_premises: bool,
    /// Smallest admissible circuit length.
    pub size_floor: usize,
}

impl Default for CircuitToCurveOptions {
    fn default() -> Self {
        CircuitToCurveOptions { chord: ChordRule::Default, enforce_premises: true, size_floor: 16 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitToCurveReport {
    pub epsilon: f64,
    pub chord: f64,
    pub circuit_len: usize,
    pub vol: usize,
    pub hausdorff: f64,
    pub hausdorff_bound: f64,
    pub area: f64,
    pub area_mismatch: f64,
    pub area_bound: f64,
    pub b: u32,
    pub curve_length: f64,
    pub simplify: SimpleReport,
    /// Premises that failed; empty when all hold.
    pub premise_failures: Vec<String>,
}

impl CircuitToCurveReport {
    pub fn hausdorff_ok(&self) -> bool {
        self.hausdorff <= self.hausdorff_bound
    }

    pub fn area_ok(&self) -> bool {
        self.area_mismatch <= self.area_bound
    }

    pub fn length_ok(&self) -> bool {
        self.b as f64 >= (1.0 - self.epsilon) * self.curve_length - 1e-9
    }

    pub fn all_ok(&self) -> bool {
        self.hausdorff_ok() && self.area_ok() && self.length_ok()
    }
}

fn circuit_points(gamma: &LatticePath) -> Vec<Point> {
    let v = gamma.vertices();
    v[..v.len() - 1].iter().map(|&s| s.into()).collect()
}

/// A simple closed curve shadowing a counter-clockwise right-most circuit,
/// with the measured quality of the approximation.
pub fn circuit_to_curve(
    gamma: &LatticePath,
    cfg: &Configuration,
    eps: f64,
    norm: &NormHandle,
    opts: &CircuitToCurveOptions,
) -> Result<(Curve, CircuitToCurveReport)> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(domain("epsilon must lie in (0, 1)"));
    }
    if !gamma.is_circuit() || !is_rightmost(gamma) {
        return Err(domain("expected a right-most circuit"));
    }
    let region = vol(gamma)?;
    let mut failures = Vec::new();
    if !is_open_path(gamma, cfg) {
        failures.push("circuit is not open inside the box".to_string());
    }
    if !is_counterclockwise(gamma)? {
        failures.push("circuit is not counter-clockwise".to_string());
    }
    if gamma.len() < opts.size_floor {
        failures.push(format!("|γ| = {} is below the size floor {}", gamma.len(), opts.size_floor));
    }
    let cap = (region.len() as f64).powf(2.0 / 3.0);
    if gamma.len() as f64 > cap {
        failures.push(format!("|γ| = {} exceeds |vol(γ)|^(2/3) = {cap:.3}", gamma.len()));
    }
    if opts.enforce_premises && !failures.is_empty() {
        return Err(Error::Precondition(failures.join("; ")));
    }
    let chord = match opts.chord {
        ChordRule::Default => (gamma.len() as f64).powf(0.25).ceil().max(2.0),
        ChordRule::Asymptotic { box_radius } => (box_radius.max(1) as f64).powf(0.01).ceil(),
        ChordRule::Fixed(r) => r,
    };
    let raw = Curve::closed(circuit_points(gamma))?;
    let approx = poly_approx(&raw, chord)?;
    if approx.len() < 3 {
        return Err(Error::Degenerate(format!("chord {chord} collapses the circuit")));
    }
    let (lambda, simplify) = make_simple(&approx, eps, norm)?;
    let lambda = if lambda.signed_area() < 0.0 { lambda.reversed() } else { lambda };
    let area = hull_area(&lambda);
    let n = region.len() as f64;
    let report = CircuitToCurveReport {
        epsilon: eps,
        chord,
        circuit_len: gamma.len(),
        vol: region.len(),
        hausdorff: hausdorff(SetRef::Sites(&region), SetRef::Region(&lambda))?,
        hausdorff_bound: 1.0 + eps * n.sqrt(),
        area,
        area_mismatch: (n - area).abs(),
        area_bound: eps * n,
        b: path_costs(gamma, cfg)?.b,
        curve_length: lambda.length(norm),
        simplify,
        premise_failures: failures,
    };
    Ok((lambda, report))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveToCircuitOptions {
    /// Target length of the pieces each side is subdivided into; `R/8` by
    /// default, and one piece per side when infinite.
    pub piece_len: Option<f64>,
    /// Polygons with more vertices are thinned to this many by repeatedly
    /// dropping the vertex that spans the smallest triangle.
    pub max_sides: usize,
}

impl Default for CurveToCircuitOptions {
    fn default() -> Self {
        CurveToCircuitOptions { piece_len: None, max_sides: 16 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveToCircuitReport {
    pub epsilon: f64,
    pub scale: f64,
    pub sides: usize,
    pub anchors: Vec<Site>,
    /// Whether the two-window splice closed the circuit; otherwise the outer
    /// boundary of the enclosed cluster points was used.
    pub spliced: bool,
    pub b: u32,
    pub side_b_sum: u32,
    pub vol: usize,
    pub hausdorff: f64,
    pub area: f64,
    pub area_mismatch: f64,
    pub curve_length: f64,
}

impl CurveToCircuitReport {
    pub fn hausdorff_ok(&self) -> bool {
        self.hausdorff <= self.epsilon * self.scale
    }

    pub fn area_ok(&self) -> bool {
        self.area_mismatch <= self.epsilon * self.scale * self.scale
    }

    pub fn length_ok(&self) -> bool {
        self.b as f64 <= (1.0 + self.epsilon) * self.curve_length + 1e-9
    }

    /// `b(γ) ≤ Σ b(γ_k) + 2N`.
    pub fn splice_bound_ok(&self) -> bool {
        self.b <= self.side_b_sum + 2 * self.sides as u32
    }

    pub fn all_ok(&self) -> bool {
        self.hausdorff_ok() && self.area_ok() && self.length_ok()
    }
}

/// The counter-clockwise vertices of a closed polygon, thinned to at most
/// `max_sides` by repeatedly dropping the vertex spanning the smallest
/// triangle with its neighbours.
pub fn thin_polygon(lambda: &Curve, max_sides: usize) -> Vec<Point> {
    let ccw = if lambda.signed_area() < 0.0 { lambda.reversed() } else { lambda.clone() };
    let mut v = ccw.points().to_vec();
    let tri = |a: Point, b: Point, c: Point| ((b - a).cross(c - a)).abs();
    while v.len() > max_sides.max(3) {
        let n = v.len();
        let k = (0..n)
            .min_by(|&i, &j| {
                let ai = tri(v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
                let aj = tri(v[(j + n - 1) % n], v[j], v[(j + 1) % n]);
                ai.total_cmp(&aj)
            })
            .unwrap();
        v.remove(k);
    }
    v
}

/// Closes `γ' = γ_1 ∗ … ∗ γ_{N−1}` with the last side `γ_N` using the
/// two-window splice. Returns `None` when the windows do not line up.
fn splice(first: &LatticePath, last: &LatticePath, x_prev: Point, x0: Point, window: f64) -> Option<LatticePath> {
    let u = first.vertices();
    let v = last.vertices();
    let in_window = |s: Site, c: Point| (Point::from(s) - c).norm_inf() <= window;
    let v_set: HashSet<Site> = v.iter().copied().collect();
    let kp = u.iter().position(|&s| in_window(s, x_prev) && v_set.contains(&s))?;
    let k = v.iter().rposition(|&s| s == u[kp])?;
    let u_set: HashSet<Site> = u.iter().copied().collect();
    let j = (k + 1..v.len()).find(|&j| in_window(v[j], x0) && u_set.contains(&v[j]))?;
    let jp = u.iter().rposition(|&s| s == v[j])?;
    if jp >= kp {
        return None;
    }
    let mut w = u[jp..=kp].to_vec();
    w.extend_from_slice(&v[k + 1..=j]);
    let g = LatticePath::new(w).ok()?;
    (!g.is_empty() && g.is_circuit() && is_rightmost(&g)).then_some(g)
}

/// Giant-cluster sites inside the polygon, restricted to the component of
/// the open subgraph holding the most of them.
fn enclosed_component(poly: &[Point], cfg: &Configuration, labeling: &ClusterLabeling) -> HashSet<Site> {
    let lam = Curve::closed(poly.to_vec()).expect("nonempty polygon");
    let inside: HashSet<Site> = cfg
        .sites()
        .filter(|&s| labeling.in_giant(s) && super::base::in_hull(&lam, s.into()))
        .collect();
    let mut seen: HashMap<Site, usize> = HashMap::new();
    let mut comps: Vec<Vec<Site>> = Vec::new();
    let mut order: Vec<Site> = inside.iter().copied().collect();
    order.sort_by_key(|s| (s.y, s.x));
    for &s in &order {
        if seen.contains_key(&s) {
            continue;
        }
        let id = comps.len();
        let mut comp = vec![s];
        seen.insert(s, id);
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for w in cfg.open_neighbors(v) {
                if inside.contains(&w) && !seen.contains_key(&w) {
                    seen.insert(w, id);
                    comp.push(w);
                    q.push_back(w);
                }
            }
        }
        comps.push(comp);
    }
    comps.into_iter().max_by_key(|c| c.len()).unwrap_or_default().into_iter().collect()
}

/// An open counter-clockwise right-most circuit following `R·λ`, built from
/// near-optimal paths between anchors of the scaled polygon vertices.
pub fn curve_to_circuit(
    lambda: &Curve,
    scale: f64,
    eps: f64,
    cfg: &Configuration,
    labeling: &ClusterLabeling,
    norm: &NormHandle,
    opts: &CurveToCircuitOptions,
) -> Result<(LatticePath, CurveToCircuitReport)> {
    if !lambda.is_closed() || !lambda.is_convex() {
        return Err(domain("curve_to_circuit needs a simple closed curve with convex interior"));
    }
    if !(scale > 0.0 && eps > 0.0) {
        return Err(domain("scale and epsilon must be positive"));
    }
    let verts: Vec<Point> = thin_polygon(lambda, opts.max_sides).into_iter().map(|p| p * scale).collect();
    let n = verts.len();
    if n < 3 {
        return Err(Error::Degenerate("polygonal approximation has fewer than 3 vertices".into()));
    }
    let slack = margin(cfg.radius) as f64;
    let mut anchors = Vec::with_capacity(n);
    for &x in &verts {
        let a = anchor((x.x, x.y), labeling)?;
        if a.distance > slack {
            return Err(Error::OutOfMargin { x: x.x, y: x.y, safe: labeling.safe_radius() });
        }
        anchors.push(a.anchor);
    }
    let piece = opts.piece_len.unwrap_or((scale / 8.0).max(4.0));
    let mut sides = Vec::with_capacity(n);
    let mut side_b_sum = 0;
    for k in 0..n {
        let (x, y) = (anchors[k], anchors[(k + 1) % n]);
        let pieces = ((x.dist_inf(y) as f64 / piece).ceil() as usize).max(1);
        let g = subdivided_path(x, y, pieces, cfg, labeling)?;
        side_b_sum += path_costs(&g, cfg)?.b;
        sides.push(g);
    }
    let min_side = (0..n).map(|k| (verts[(k + 1) % n] - verts[k]).norm_inf()).fold(f64::INFINITY, f64::min);
    // The splice closes at side `n−1`; when the windows there do not line
    // up, the sides are rotated so that another corner closes the loop.
    let mut spliced = None;
    for r in 0..n {
        let at = |k: usize| (k + r) % n;
        let mut first = LatticePath::trivial(anchors[at(0)]);
        for k in 0..n - 1 {
            first = star_concat(&first, &sides[at(k)])?;
        }
        if let Some(g) = splice(&first, &sides[at(n - 1)], verts[at(n - 1)], verts[at(0)], min_side / 3.0) {
            if is_counterclockwise(&g)? {
                spliced = Some(g);
                break;
            }
        }
    }
    let (gamma, was_spliced) = match spliced {
        Some(g) => (g, true),
        None => {
            let u = enclosed_component(&verts, cfg, labeling);
            let g = outer_boundary_circuit(&u, |k: EdgeKey| cfg.is_open(k))?;
            (g, false)
        }
    };
    let region: DiscreteRegion = vol(&gamma)?;
    let lam_r = Curve::closed(verts.clone())?;
    let area = hull_area(&lam_r);
    let report = CurveToCircuitReport {
        epsilon: eps,
        scale,
        sides: n,
        anchors,
        spliced: was_spliced,
        b: path_costs(&gamma, cfg)?.b,
        side_b_sum,
        vol: region.len(),
        hausdorff: hausdorff(SetRef::Sites(&region), SetRef::Region(&lam_r))?,
        area,
        area_mismatch: (region.len() as f64 - area).abs(),
        curve_length: lam_r.length(norm),
    };
    Ok((gamma, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::percolation::label_clusters;
    use crate::wulff::build_wulff;

    fn square_circuit(s: i32) -> LatticePath {
        let mut v = Vec::new();
        v.extend((0..s).map(|x| Site::new(x, 0)));
        v.extend((0..s).map(|y| Site::new(s, y)));
        v.extend((0..s).map(|x| Site::new(s - x, s)));
        v.extend((0..=s).map(|y| Site::new(0, s - y)));
        LatticePath::new(v).unwrap()
    }

    #[test]
    fn large_square_circuit() {
        let cfg = Configuration::full(70).unwrap();
        let g = square_circuit(64).translated(Site::new(-32, -32));
        let (lam, r) = circuit_to_curve(&g, &cfg, 0.1, &NormHandle::L1, &Default::default()).unwrap();
        assert!(lam.is_simple());
        assert!(r.all_ok(), "{r:?}");
        assert_eq!(r.vol, 65 * 65);
    }

    #[test]
    fn premises_are_enforced() {
        let cfg = Configuration::full(10).unwrap();
        let g = square_circuit(4);
        let e = circuit_to_curve(&g, &cfg, 0.1, &NormHandle::L1, &Default::default());
        assert!(matches!(e, Err(Error::Precondition(_))));
        let relaxed = CircuitToCurveOptions { enforce_premises: false, ..Default::default() };
        let (_, r) = circuit_to_curve(&g, &cfg, 0.1, &NormHandle::L1, &relaxed).unwrap();
        assert!(!r.premise_failures.is_empty());
    }

    #[test]
    fn wulff_square_at_p_one() {
        let cfg = Configuration::full(48).unwrap();
        let l = label_clusters(&cfg);
        let w = build_wulff(&NormHandle::L1, 8).unwrap();
        let lam = Curve::closed(w.normalized.vertices().to_vec()).unwrap();
        let (g, r) = curve_to_circuit(&lam, 32.0, 0.1, &cfg, &l, &NormHandle::L1, &Default::default()).unwrap();
        assert!(g.is_circuit() && is_rightmost(&g));
        assert!(is_counterclockwise(&g).unwrap());
        assert!(((r.b as f64 / 32.0) - 4.0).abs() < 0.4, "{r:?}");
        assert!(r.splice_bound_ok());
        assert!(r.hausdorff_ok() && r.area_ok());
    }

    #[test]
    fn circle_at_p_one() {
        let cfg = Configuration::full(48).unwrap();
        let l = label_clusters(&cfg);
        let lam = Curve::circle(Point::default(), 1.0, 720);
        let (g, r) = curve_to_circuit(&lam, 32.0, 0.1, &cfg, &l, &NormHandle::L1, &Default::default()).unwrap();
        assert!(g.is_circuit() && is_rightmost(&g));
        assert!(r.length_ok(), "{r:?}");
    }

    #[test]
    fn nonconvex_rejected() {
        let cfg = Configuration::full(8).unwrap();
        let l = label_clusters(&cfg);
        let lam = Curve::closed(vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(1.0, 0.3),
            Point::new(2.0, 2.0),
            Point::new(0.0, 2.0),
        ])
        .unwrap();
        assert!(curve_to_circuit(&lam, 2.0, 0.1, &cfg, &l, &NormHandle::L1, &Default::default()).is_err());
    }
}
