//! The acceptance suite: twelve checks, from the path calculus up to the
//! reproducibility of whole runs. Each check returns a
//! [`CriterionResult`]; the command-line `validate` and the integration
//! tests run the same code.

use std::collections::{HashMap, HashSet};
use std::io::Write;
use std::sync::OnceLock;
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::experiment::{execute, Command, Manifest, RunConfig};
use crate::iso::{
    cheeger_exact, host_box_radius, limit_report, profile_exact, shape_distance, wulff_candidate, IsoMode,
    LimitOptions, ShapeScale, CANDIDATE_EPSILON, ENUMERATION_BUDGET,
};
use crate::lattice::{DirectedEdge, Site};
use crate::norm::{concentration_report, estimate_direction};
use crate::parallel::{map_indexed, with_threads};
use crate::paths::{
    exhaustive_b, for_each_rightmost, from_interface, is_medial_walk, is_rightmost, random_rightmost, right_boundary,
    solve_b, star_concat, to_interface, LatticePath, Scope, VisitTag,
};
use crate::percolation::{anchor_site, chemical_distance, label_clusters, Configuration};
use crate::rng::{derive_seed, tag, Stream};
use crate::wulff::{build_wulff, NormHandle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    #[serde(skip)]
    pub seconds: f64,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// `[PASS] 6 wulff goldens: ...`
    pub fn line(&self) -> String {
        let s = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        format!("[{s}] {:>2} {}: {} ({:.1}s)", self.id, self.name, self.detail, self.seconds)
    }
}

pub const NAMES: [&str; 12] = [
    "interface bijection",
    "boundary length bounds",
    "star concatenation",
    "solver matches oracle",
    "triangle and chemical bounds",
    "wulff goldens",
    "p=1 exact values",
    "p=1 candidate scaling",
    "concentration trend",
    "limit self-consistency",
    "shape diagnostic",
    "determinism",
];

/// Criteria too slow for `--quick`.
pub const HEAVY: [u8; 4] = [4, 5, 9, 10];

fn verdict(ok: bool, detail: String) -> (Status, String) {
    (if ok { Status::Pass } else { Status::Fail }, detail)
}

fn from_result(r: Result<(bool, String)>) -> (Status, String) {
    match r {
        Ok((ok, d)) => verdict(ok, d),
        Err(e) => (Status::Fail, format!("error: {e}")),
    }
}

fn count_multiset<T: std::hash::Hash + Eq>(it: impl Iterator<Item = T>) -> HashMap<T, usize> {
    let mut m = HashMap::new();
    for x in it {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

/// Every right-most path of length at most 8 from every vertex of a 5×5 box.
fn box_paths(visit: &mut dyn FnMut(&LatticePath)) -> Result<u64> {
    let cfg = Configuration::full(2)?;
    let mut total = 0;
    for x in cfg.sites().collect::<Vec<_>>() {
        for_each_rightmost(x, 8, Scope::Config { cfg: &cfg, open_only: false }, u64::MAX, |p| {
            total += 1;
            visit(p)
        })?;
    }
    Ok(total)
}

fn c1() -> Result<(bool, String)> {
    let mut bad = 0u64;
    let total = box_paths(&mut |p| {
        if p.is_empty() {
            return;
        }
        let ok = to_interface(p).is_ok_and(|i| {
            let reflect: Vec<DirectedEdge> =
                i.visits.iter().filter(|v| v.tag == VisitTag::Reflect).map(|v| v.edge).collect();
            let cut = count_multiset(i.visits.iter().filter(|v| v.tag == VisitTag::Cut).map(|v| v.edge));
            from_interface(&i).is_ok_and(|q| &q == p)
                && is_medial_walk(&i)
                && reflect == p.steps().collect::<Vec<_>>()
                && cut == count_multiset(right_boundary(p).edges.into_iter())
        });
        bad += u64::from(!ok);
    })?;
    Ok((bad == 0, format!("{total} paths, {bad} failures")))
}

fn c2() -> Result<(bool, String)> {
    let mut bad = 0u64;
    let total = box_paths(&mut |p| {
        let (g, b) = (p.len() as f64, right_boundary(p).len() as f64);
        bad += u64::from(!(g / 3.0 - 2.0 <= b && b <= 3.0 * g));
    })?;
    Ok((bad == 0, format!("{total} paths, {bad} violations")))
}

/// Trials for the ∗-concatenation check.
pub const STAR_TRIALS: usize = 10_000;

fn c3() -> Result<(bool, String)> {
    let mut rng = Stream::new(0x5eed, tag::AUX);
    let (mut tried, mut skipped, mut bad, mut worst) = (0, 0, 0, 0);
    while tried < STAR_TRIALS {
        let x = Site::new(rng.below(9) as i32 - 4, rng.below(9) as i32 - 4);
        let a = random_rightmost(x, Site::ORIGIN, 4, 16, &mut rng)?;
        let b = random_rightmost(a.end(), Site::ORIGIN, 4, 16, &mut rng)?;
        let c = star_concat(&a, &b)?;
        if c.is_circuit() && !c.is_empty() {
            skipped += 1;
            continue;
        }
        tried += 1;
        let old: HashSet<DirectedEdge> = right_boundary(&a).edges.into_iter().chain(right_boundary(&b).edges).collect();
        let new = right_boundary(&c).edges.iter().filter(|e| !old.contains(e)).count();
        worst = worst.max(new);
        bad += usize::from(!is_rightmost(&c) || new > 2);
    }
    Ok((bad == 0, format!("{tried} concatenations ({skipped} closed skipped), {bad} failures, at most {worst} new edges")))
}

/// Outcome of the solver-oracle sweep shared by criteria 4 and 5.
#[derive(Clone, Debug)]
pub struct OracleSweep {
    pub pairs: usize,
    pub mismatches: usize,
    pub errors: Vec<String>,
    pub triples: usize,
    pub triangle_violations: usize,
    pub chemical_violations: usize,
}

/// Configurations per `p` in the oracle sweep.
pub const ORACLE_CONFIGS: usize = 100;
pub const ORACLE_PS: [f64; 3] = [0.6, 0.8, 1.0];

fn oracle_config(p: f64, i: usize) -> Result<OracleSweep> {
    let cfg = Configuration::sample(p, 3, derive_seed(p.to_bits(), tag::REPLICA, i as u64))?;
    let labeling = label_clusters(&cfg);
    let sites: Vec<Site> = cfg.sites().collect();
    let mut out = OracleSweep { pairs: 0, mismatches: 0, errors: vec![], triples: 0, triangle_violations: 0, chemical_violations: 0 };
    let mut b: HashMap<(Site, Site), u32> = HashMap::new();
    for &x in &sites {
        for &y in &sites {
            if x == y || x.dist_inf(y) > 4 {
                continue;
            }
            let Some(d) = chemical_distance(&cfg, x, y) else { continue };
            out.pairs += 1;
            let s = match solve_b(x, y, &labeling, &cfg) {
                Ok(s) => s,
                Err(e) => {
                    out.errors.push(format!("p={p} cfg={i} {x:?}->{y:?}: {e}"));
                    continue;
                }
            };
            let upper = s.value as u32;
            match exhaustive_b(x, y, &cfg, Some(upper), ENUMERATION_BUDGET) {
                Ok(Some((e, _))) if e == upper => {
                    b.insert((x, y), e);
                    out.chemical_violations += usize::from(e > 3 * d);
                }
                Ok(r) => {
                    out.mismatches += 1;
                    out.errors.push(format!("p={p} cfg={i} {x:?}->{y:?}: solver {upper}, oracle {:?}", r.map(|r| r.0)));
                }
                Err(e) => out.errors.push(format!("p={p} cfg={i} {x:?}->{y:?}: {e}")),
            }
        }
    }
    for (&(x, y), &bxy) in &b {
        for &z in &sites {
            if let (Some(&byz), Some(&bxz)) = (b.get(&(y, z)), b.get(&(x, z))) {
                out.triples += 1;
                out.triangle_violations += usize::from(bxz > bxy + byz + 2);
            }
        }
    }
    Ok(out)
}

/// Runs the sweep once per process and caches it.
pub fn oracle_sweep() -> &'static OracleSweep {
    static SWEEP: OnceLock<OracleSweep> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let jobs: Vec<(f64, usize)> = ORACLE_PS.iter().flat_map(|&p| (0..ORACLE_CONFIGS).map(move |i| (p, i))).collect();
        let parts = map_indexed(jobs.len(), |j| oracle_config(jobs[j].0, jobs[j].1));
        let mut total = OracleSweep { pairs: 0, mismatches: 0, errors: vec![], triples: 0, triangle_violations: 0, chemical_violations: 0 };
        for (j, r) in parts.into_iter().enumerate() {
            match r {
                Ok(s) => {
                    total.pairs += s.pairs;
                    total.mismatches += s.mismatches;
                    total.errors.extend(s.errors);
                    total.triples += s.triples;
                    total.triangle_violations += s.triangle_violations;
                    total.chemical_violations += s.chemical_violations;
                }
                Err(e) => total.errors.push(format!("p={} cfg={}: {e}", jobs[j].0, jobs[j].1)),
            }
        }
        total
    })
}

fn c4() -> Result<(bool, String)> {
    let s = oracle_sweep();
    let first = s.errors.first().map(|e| format!("; first: {e}")).unwrap_or_default();
    Ok((s.errors.is_empty() && s.mismatches == 0, format!("{} pairs, {} mismatches, {} errors{first}", s.pairs, s.mismatches, s.errors.len())))
}

fn c5() -> Result<(bool, String)> {
    let s = oracle_sweep();
    Ok((
        s.triangle_violations == 0 && s.chemical_violations == 0 && s.triples > 0,
        format!(
            "{} triples, {} triangle violations, {} pairs with b > 3D",
            s.triples, s.triangle_violations, s.chemical_violations
        ),
    ))
}

fn c6() -> Result<(bool, String)> {
    let l1 = build_wulff(&NormHandle::L1, 8)?.phi;
    let linf = build_wulff(&NormHandle::Linf, 8)?.phi;
    let l2 = build_wulff(&NormHandle::L2, 360)?.phi;
    let ok = (l1 - 4.0).abs() <= 1e-9
        && (linf - 2.0 * 2f64.sqrt()).abs() <= 1e-9
        && (l2 - 2.0 * std::f64::consts::PI.sqrt()).abs() <= 1e-3;
    Ok((ok, format!("phi l1 = {l1:.12}, linf = {linf:.12}, l2 = {l2:.6}")))
}

fn c7() -> Result<(bool, String)> {
    let beta = estimate_direction(1.0, (1.0, 0.0), 64, 4, 0)?;
    let ch1 = cheeger_exact(&Configuration::full(host_box_radius(1))?, 1, ENUMERATION_BUDGET)?;
    let ch2 = cheeger_exact(&Configuration::full(host_box_radius(2))?, 2, ENUMERATION_BUDGET)?;
    let cfg = Configuration::full(8)?;
    let l = label_clusters(&cfg);
    let pr = profile_exact(&cfg, &l, anchor_site(Site::ORIGIN, &l)?, 9, ENUMERATION_BUDGET)?;
    let ok = beta.mean == 63.0 / 64.0
        && beta.stderr == 0.0
        && ch1.ratio == 2.0
        && ch2.ratio == 14.0 / 12.0
        && pr.ratio == 4.0 / 3.0;
    Ok((
        ok,
        format!(
            "beta = {} ± {}, cheeger(1) = {}/{}, cheeger(2) = {}/{}, profile(9) = {}/{}",
            beta.mean,
            beta.stderr,
            ch1.boundary,
            ch1.volume(),
            ch2.boundary,
            ch2.volume(),
            pr.boundary,
            pr.volume()
        ),
    ))
}

fn p_one_candidate(mode: IsoMode, n: usize) -> Result<crate::iso::CandidateReport> {
    let shape = build_wulff(&NormHandle::L1, 8)?;
    let cfg = Configuration::full(crate::iso::candidate_box_radius(mode, n, &shape, 1.0))?;
    let l = label_clusters(&cfg);
    wulff_candidate(&cfg, &l, n, CANDIDATE_EPSILON, &shape, mode)
}

fn c8() -> Result<(bool, String)> {
    let target = 2.0 * 2f64.sqrt();
    let e32 = (32.0 * p_one_candidate(IsoMode::Cheeger, 32)?.set.ratio / target - 1.0).abs();
    let e64 = (64.0 * p_one_candidate(IsoMode::Cheeger, 64)?.set.ratio / target - 1.0).abs();
    let pr = p_one_candidate(IsoMode::Profile, 900)?;
    let ep = ((pr.set.volume() as f64).sqrt() * pr.set.ratio / 4.0 - 1.0).abs();
    Ok((
        e32 <= 0.15 && e64 <= 0.10 && ep <= 0.15,
        format!("relative errors: cheeger n=32 {e32:.4}, n=64 {e64:.4}; profile v=900 {ep:.4}"),
    ))
}

fn c9() -> Result<(bool, String)> {
    let r = concentration_report(0.7, (1.0, 0.0), &[16, 32, 64, 128], 200, 9)?;
    let sds: Vec<String> = r.rows.iter().map(|row| format!("{:.4}", row.sd)).collect();
    Ok((r.sd_decreasing(3.0), format!("sd of b/n across 16..128: {}", sds.join(", "))))
}

fn c10() -> Result<(bool, String)> {
    let seeds: Vec<u64> = (0..20).collect();
    let run = limit_report(0.7, &[32, 64], &seeds, IsoMode::Cheeger, &LimitOptions::default())?;
    let m32 = run.summaries[0].median_relative_error;
    let m64 = run.summaries[1].median_relative_error;
    Ok((
        m64 <= 0.25 && m32 > m64,
        format!(
            "median relative error n=32 {m32:.4}, n=64 {m64:.4}; predicted {:.4}, phi {:.4}, theta {:.4}",
            run.summaries[1].predicted, run.phi_hat, run.summaries[1].theta_hat
        ),
    ))
}

fn c11() -> Result<(bool, String)> {
    let shape = build_wulff(&NormHandle::L1, 8)?;
    let n = 64;
    let c = p_one_candidate(IsoMode::Cheeger, n)?;
    let d = shape_distance(&c.set.sites, &shape, ShapeScale::Cheeger { n })?;
    let vol = c.set.volume() as i32;
    let bar: Vec<Site> = (0..vol).map(|x| Site::new(x - vol / 2, 0)).collect();
    let r = shape_distance(&bar, &shape, ShapeScale::Cheeger { n })?;
    Ok((d.relative <= 0.15 && r.relative > 0.3, format!("candidate {:.4}, rectangle {:.4} of the diameter", d.relative, r.relative)))
}

/// Small manifests covering every data-producing command.
pub fn determinism_manifests() -> Vec<RunConfig> {
    let mut out = Vec::new();
    let mut c = RunConfig::new(Command::Sample);
    c.n = Some(12);
    c.replicas = Some(6);
    out.push(c);
    let mut c = RunConfig::new(Command::Beta);
    c.n = Some(12);
    c.dirs = Some(3);
    c.replicas = Some(4);
    c.n_list = vec![8, 12];
    out.push(c);
    let mut c = RunConfig::new(Command::Wulff);
    c.dirs = Some(3);
    c.table_scale = Some(12);
    c.table_replicas = Some(4);
    out.push(c);
    for cmd in [Command::Cheeger, Command::Profile, Command::Shapes] {
        let mut c = RunConfig::new(cmd);
        c.n_list = if cmd == Command::Profile { vec![10, 40] } else { vec![2, 8] };
        c.replicas = Some(3);
        c.dirs = Some(3);
        c.table_scale = Some(12);
        c.table_replicas = Some(4);
        out.push(c);
    }
    out
}

fn c12() -> Result<(bool, String)> {
    let mut diffs = Vec::new();
    let manifests = determinism_manifests();
    for cfg in &manifests {
        let one = with_threads(1, || execute(cfg))?;
        let json = Manifest::new(cfg, &one).to_json()?;
        let back: Manifest = serde_json::from_str(&json)?;
        let eight = with_threads(8, || execute(&back.config))?;
        if back.config != *cfg || one.artifacts != eight.artifacts {
            diffs.push(format!("{:?}", cfg.command));
        }
    }
    Ok((diffs.is_empty(), format!("{} manifests replayed at 1 and 8 threads, differing: [{}]", manifests.len(), diffs.join(", "))))
}

/// Runs criterion `id` (1 to 12).
pub fn run(id: u8) -> CriterionResult {
    let start = Instant::now();
    let (status, detail) = from_result(match id {
        1 => c1(),
        2 => c2(),
        3 => c3(),
        4 => c4(),
        5 => c5(),
        6 => c6(),
        7 => c7(),
        8 => c8(),
        9 => c9(),
        10 => c10(),
        11 => c11(),
        12 => c12(),
        _ => Ok((false, format!("no criterion {id}"))),
    });
    CriterionResult { id, name: NAMES.get(id as usize - 1).copied().unwrap_or("unknown"), status, detail, seconds: start.elapsed().as_secs_f64() }
}

/// Every criterion in order; with `quick`, the heavy ones are skipped.
pub fn run_all(quick: bool) -> Vec<CriterionResult> {
    run_all_with(quick, &mut |_| {})
}

/// [`run_all`], reporting each result as soon as it is known.
pub fn run_all_with(quick: bool, on_result: &mut dyn FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    (1..=12)
        .map(|id| {
            let r = if quick && HEAVY.contains(&id) {
                CriterionResult { id, name: NAMES[id as usize - 1], status: Status::Skipped, detail: "skipped in quick mode".into(), seconds: 0.0 }
            } else {
                run(id)
            };
            on_result(&r);
            r
        })
        .collect()
}

pub fn write_csv<W: Write>(w: W, results: &[CriterionResult]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["id", "name", "status", "detail"])?;
    for r in results {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        };
        out.write_record([r.id.to_string().as_str(), r.name, status, r.detail.as_str()])?;
    }
    out.flush()?;
    Ok(())
}
