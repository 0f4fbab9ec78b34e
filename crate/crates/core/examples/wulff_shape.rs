//! Wulff shapes of a few norms and the isoperimetric constant φ.
//! Writes `wulff_<norm>.svg` into the directory given as first argument.

use std::path::PathBuf;

use perciso::wulff::{bonnesen_deficiency, build_wulff, unit_area_ellipse, NormHandle};

fn main() -> perciso::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from);
    for (name, norm) in [("l1", NormHandle::L1), ("l2", NormHandle::L2), ("linf", NormHandle::Linf)] {
        let s = build_wulff(&norm, 360)?;
        println!(
            "{name:5} φ = {:.6}, {} vertices, r in [{:.4}, {:.4}]",
            s.phi,
            s.normalized.len(),
            s.r_inner,
            s.r_outer
        );
        if let Some(dir) = &out {
            std::fs::write(dir.join(format!("wulff_{name}.svg")), s.to_svg())?;
        }
    }

    // An ellipse of unit area is longer than the circle in the ℓ² sense.
    let circle = build_wulff(&NormHandle::L2, 360)?;
    let e = unit_area_ellipse(2.0, 0.5, 0.3, 400);
    let b = bonnesen_deficiency(&e, &circle)?;
    println!("ellipse: length {:.4} vs φ {:.4}, excess {:.4}, distance {:.4}", b.length, b.phi, b.raw_excess, b.distance);
    Ok(())
}
