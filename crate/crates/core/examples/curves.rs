//! Between circuits and curves: an open circuit in a percolation box becomes
//! a simple polygon, and a convex polygon becomes an open circuit.

use std::collections::HashSet;

use perciso::curve::{
    circuit_to_curve, curve_to_circuit, make_simple, outer_boundary_circuit, poly_approx, vol, CircuitToCurveOptions,
    Curve, CurveToCircuitOptions,
};
use perciso::geom::Point;
use perciso::lattice::Site;
use perciso::percolation::{anchor_site, label_clusters, Configuration};
use perciso::wulff::NormHandle;

fn main() -> perciso::Result<()> {
    let cfg = Configuration::sample(0.8, 30, 11)?;
    let l = label_clusters(&cfg);

    // Outer boundary of the origin's component inside a disc.
    let disc: HashSet<Site> = l.giant_sites().into_iter().filter(|s| s.x * s.x + s.y * s.y <= 100).collect();
    let start = anchor_site(Site::ORIGIN, &l)?;
    let mut comp = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for w in cfg.open_neighbors(v) {
            if disc.contains(&w) && comp.insert(w) {
                stack.push(w);
            }
        }
    }
    let gamma = outer_boundary_circuit(&comp, |k| cfg.is_open(k))?;
    println!("boundary circuit: {} steps, encloses {} sites", gamma.len(), vol(&gamma)?.len());
    let opts = CircuitToCurveOptions { enforce_premises: false, ..Default::default() };
    let (lambda, rep) = circuit_to_curve(&gamma, &cfg, 0.2, &NormHandle::L2, &opts)?;
    println!("curve: {} vertices, area {:.1}, hausdorff {:.2} (bound {:.2})", lambda.len(), rep.area, rep.hausdorff, rep.hausdorff_bound);

    // A self-crossing bow tie and its uncrossed version.
    let bow = Curve::closed(vec![Point::new(0.0, 0.0), Point::new(2.0, 1.0), Point::new(2.0, 0.0), Point::new(0.0, 1.0)])?;
    let (simple, srep) = make_simple(&bow, 0.01, &NormHandle::L2)?;
    println!("bow tie: simple {} -> {}, {} crossings resolved", bow.is_simple(), simple.is_simple(), srep.crossings_resolved);
    println!("polygonal approximation at r = 0.5 has {} vertices", poly_approx(&Curve::circle(Point::new(0.0, 0.0), 3.0, 64), 0.5)?.len());

    let square = Curve::closed(vec![Point::new(-1.0, -1.0), Point::new(1.0, -1.0), Point::new(1.0, 1.0), Point::new(-1.0, 1.0)])?;
    let (c, r) = curve_to_circuit(&square, 10.0, 0.1, &cfg, &l, &NormHandle::L1, &CurveToCircuitOptions::default())?;
    println!("circuit along 10·square: {} steps, b = {}, spliced {}, vol {}", c.len(), r.b, r.spliced, r.vol);
    Ok(())
}
