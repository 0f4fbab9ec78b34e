//! Cheeger constants on the giant cluster. Tiny hosts are solved exactly and
//! larger ones by the Wulff candidate; a limit report compares scaled values
//! with `θ̂⁻¹φ̂/√2`.
//!
//! ```text
//! cargo run --release --example isoperimetry
//! ```

use perciso::iso::{
    candidate_box_radius, cheeger_exact, host_box_radius, limit_report, lower_bound_audit, wulff_candidate, IsoMode,
    LimitOptions, AUDIT_ZETA, CANDIDATE_EPSILON, ENUMERATION_BUDGET,
};
use perciso::percolation::{label_clusters, Configuration};
use perciso::wulff::{build_wulff, NormHandle};

fn main() -> perciso::Result<()> {
    let cfg = Configuration::sample(0.8, host_box_radius(2), 4)?;
    let u = cheeger_exact(&cfg, 2, ENUMERATION_BUDGET)?;
    println!("exact n = 2: |∂U| = {}, |U| = {}, connected {}", u.boundary, u.volume(), u.connected);

    let shape = build_wulff(&NormHandle::L1, 8)?;
    let n = 32;
    let cfg = Configuration::full(candidate_box_radius(IsoMode::Cheeger, n, &shape, 1.0))?;
    let l = label_clusters(&cfg);
    let c = wulff_candidate(&cfg, &l, n, CANDIDATE_EPSILON, &shape, IsoMode::Cheeger)?;
    println!("p = 1 candidate n = {n}: n·ratio = {:.4} (limit {:.4})", n as f64 * c.set.ratio, 2.0 * 2f64.sqrt());
    let a = lower_bound_audit(&cfg, &l, n, AUDIT_ZETA, &c.set, &NormHandle::L1, shape.phi, 1.0, CANDIDATE_EPSILON)?;
    println!("audit: chain holds {}, U ⊆ vol(γ) {}, b(γ) = {}", a.chain_holds(), a.contained, a.b_gamma);

    // A small run at p = 0.7 with a coarse norm table.
    let opts = LimitOptions { table_dirs: 3, table_scale: 24, table_replicas: 8, ..Default::default() };
    let run = limit_report(0.7, &[16, 32], &[0, 1, 2, 3], IsoMode::Cheeger, &opts)?;
    println!("φ̂ = {:.4} ± {:.4}", run.phi_hat, run.phi_stderr);
    for s in &run.summaries {
        println!(
            "n = {:2}: mean {:.4} ± {:.4}, predicted {:.4} ± {:.4}, median error {:.3}",
            s.n, s.mean_scaled, s.scaled_stderr, s.predicted, s.predicted_stderr, s.median_relative_error
        );
    }
    Ok(())
}
