//! Right-most paths, their interfaces, and the distance `b` they define.

use perciso::lattice::Site;
use perciso::paths::{
    epsilon_optimal, exhaustive_b, from_interface, is_rightmost, path_costs, right_boundary, solve_b, star_concat,
    to_interface, LatticePath,
};
use perciso::percolation::{label_clusters, Configuration};

fn main() -> perciso::Result<()> {
    let sites = |v: &[(i32, i32)]| v.iter().map(|&(x, y)| Site::new(x, y)).collect::<Vec<_>>();
    let g = LatticePath::new(sites(&[(0, 0), (1, 0), (2, 0), (2, 1), (1, 1)]))?;
    println!("path {:?}", g.vertices());
    println!("right-most: {}, right boundary: {:?}", is_rightmost(&g), right_boundary(&g).edges);

    let iface = to_interface(&g)?;
    println!("interface: {} reflections, {} cuts", iface.reflect_count(), iface.cut_count());
    assert_eq!(from_interface(&iface)?, g);

    let h = LatticePath::new(sites(&[(1, 1), (1, 2), (0, 2)]))?;
    let gh = star_concat(&g, &h)?;
    println!("g * h = {:?}", gh.vertices());

    // Minimal number of open right-boundary edges, two ways.
    let cfg = Configuration::sample(0.7, 12, 3)?;
    let l = label_clusters(&cfg);
    let (x, y) = (Site::new(-3, -2), Site::new(4, 3));
    match solve_b(x, y, &l, &cfg) {
        Ok(r) => {
            let oracle = exhaustive_b(x, y, &cfg, Some(r.value as u32), 50_000_000)?.map(|o| o.0);
            println!("b({x:?}, {y:?}) = {} ({:?}), oracle {oracle:?}", r.value, r.status);
            println!("witness has {} steps, b = {}", r.witness.len(), path_costs(&r.witness, &cfg)?.b);
            let e = epsilon_optimal(x, y, 0.5, &cfg, &l)?;
            println!("ε-optimal subdivision: {} pieces, b = {}", e.pieces, e.subdivided_b);
        }
        Err(e) => println!("no path: {e}"),
    }
    Ok(())
}
