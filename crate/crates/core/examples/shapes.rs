//! How close is a near-minimizer to the Wulff shape? Writes an SVG overlay
//! of `U/n` over the best translate of `√2·Ŵ` to the path given, if any.

use perciso::iso::{candidate_box_radius, overlay_svg, shape_distance, wulff_candidate, IsoMode, ShapeScale};
use perciso::lattice::Site;
use perciso::percolation::{label_clusters, Configuration};
use perciso::wulff::{build_wulff, NormHandle};

fn main() -> perciso::Result<()> {
    let shape = build_wulff(&NormHandle::L1, 8)?;
    let n = 48;
    let cfg = Configuration::sample(0.9, candidate_box_radius(IsoMode::Cheeger, n, &shape, 1.0), 1)?;
    let l = label_clusters(&cfg);
    let c = wulff_candidate(&cfg, &l, n, 0.01, &shape, IsoMode::Cheeger)?;
    let sc = ShapeScale::Cheeger { n };
    let d = shape_distance(&c.set.sites, &shape, sc)?;
    println!("candidate: |U| = {}, distance {:.4} = {:.3} of the diameter", c.set.volume(), d.distance, d.relative);

    // A bar of the same volume is far from any translate.
    let v = c.set.volume() as i32;
    let bar: Vec<Site> = (0..v).map(|x| Site::new(x - v / 2, 0)).collect();
    println!("bar: {:.3} of the diameter", shape_distance(&bar, &shape, sc)?.relative);

    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, overlay_svg(&c.set.sites, &shape, sc, d.shift))?;
        println!("wrote {path}");
    }
    Ok(())
}
