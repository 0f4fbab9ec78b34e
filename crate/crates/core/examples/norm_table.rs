//! Estimate the boundary norm β_p along a few directions and check that
//! `b/n` concentrates as the scale grows.

use perciso::norm::{build_norm_table, concentration_report};

fn main() -> perciso::Result<()> {
    let p = 0.7;
    let run = build_norm_table(p, 4, 32, 12, 2024, true)?;
    println!("dir            beta      stderr");
    for e in run.table.entries() {
        println!("({:.3}, {:.3})  {:.4}  {:.4}", e.dir_x, e.dir_y, e.beta_mean, e.beta_stderr);
    }
    println!("β(3, 4) = {:.4}", run.table.eval(3.0, 4.0));
    println!("solver fallbacks {}, resampled {}", run.fallbacks(), run.resampled());

    let c = concentration_report(p, (1.0, 0.0), &[8, 16, 32], 30, 5)?;
    for r in &c.rows {
        println!("n = {:3}: mean {:.4}, sd {:.4} ± {:.4}", r.scale, r.mean, r.sd, r.sd_stderr);
    }
    println!("sd decreasing within 3 stderr: {}", c.sd_decreasing(3.0));
    Ok(())
}
