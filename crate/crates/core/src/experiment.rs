//! Seeded experiment drivers shared by the command-line tool and the
//! validation suite. A [`RunConfig`] fully determines the bytes of every
//! CSV and JSON artifact it produces, whatever the thread count.

use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::iso::{self, IsoMode, LimitOptions};
use crate::norm::{build_norm_table, concentration_report, estimate_direction, unit, TableEntry};
use crate::percolation::{estimate_theta, giant_density, label_clusters, write_theta_csv, Configuration};
use crate::rng::{derive_seed, tag};
use crate::stats::fmt_f64;
use crate::validation;
use crate::wulff::{build_wulff, NormHandle, DEFAULT_DIRECTIONS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Sample,
    Beta,
    Wulff,
    Cheeger,
    Profile,
    Shapes,
    Validate,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
    Svg,
}

impl Format {
    fn of(name: &str) -> Format {
        match name.rsplit('.').next() {
            Some("json") => Format::Json,
            Some("svg") => Format::Svg,
            _ => Format::Csv,
        }
    }
}

/// Every parameter of a run. Unset options take the documented defaults of
/// the command; the resolved values are what the manifest records.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub p: f64,
    pub n: Option<usize>,
    #[serde(default)]
    pub n_list: Vec<usize>,
    pub seed: u64,
    pub replicas: Option<usize>,
    pub dirs: Option<usize>,
    pub dir: Option<(f64, f64)>,
    pub eps: Option<f64>,
    pub budget: Option<u64>,
    pub norm: Option<String>,
    pub mode: Option<IsoMode>,
    pub table_scale: Option<u32>,
    pub table_replicas: Option<usize>,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub quick: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            p: 0.7,
            n: None,
            n_list: Vec::new(),
            seed: 0,
            replicas: None,
            dirs: None,
            dir: None,
            eps: None,
            budget: None,
            norm: None,
            mode: None,
            table_scale: None,
            table_replicas: None,
            format: Format::Csv,
            quick: false,
        }
    }

    fn n_or(&self, d: usize) -> usize {
        self.n.unwrap_or(d)
    }

    fn n_values(&self, d: &[usize]) -> Vec<usize> {
        match (&self.n_list[..], self.n) {
            ([], Some(n)) => vec![n],
            ([], None) => d.to_vec(),
            (l, _) => l.to_vec(),
        }
    }

    fn norm_handle(&self) -> Result<Option<NormHandle>> {
        self.norm.as_deref().map(NormHandle::parse).transpose()
    }

    fn limit_options(&self) -> Result<LimitOptions> {
        let d = LimitOptions::default();
        Ok(LimitOptions {
            eps: self.eps.unwrap_or(d.eps),
            norm: self.norm_handle()?,
            table_dirs: self.dirs.unwrap_or(d.table_dirs),
            table_scale: self.table_scale.unwrap_or(d.table_scale),
            table_replicas: self.table_replicas.unwrap_or(d.table_replicas),
            exact_budget: self.budget.unwrap_or(d.exact_budget),
        })
    }
}

/// One output file.
#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub bytes: Vec<u8>,
}

impl Artifact {
    fn new(name: &str, bytes: Vec<u8>) -> Self {
        Artifact { name: name.to_string(), bytes }
    }

    pub fn format(&self) -> Format {
        Format::of(&self.name)
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub artifacts: Vec<Artifact>,
    /// Set by `validate`: whether every criterion that ran passed.
    pub passed: Option<bool>,
    pub warnings: Vec<String>,
}

/// What a run directory records about how it was produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub artifacts: Vec<String>,
}

impl Manifest {
    pub fn new(config: &RunConfig, outcome: &Outcome) -> Self {
        Manifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config: config.clone(),
            artifacts: outcome.artifacts.iter().map(|a| a.name.clone()).collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

fn csv_bytes(f: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    Ok(buf)
}

fn sample(cfg: &RunConfig) -> Result<Outcome> {
    let radius = cfg.n_or(32) as i32;
    let count = cfg.replicas.unwrap_or(10);
    let est = estimate_theta(cfg.p, radius, cfg.seed, count)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["replica", "seed", "open_edges", "edges", "clusters", "giant_size", "giant_density"])?;
    for i in 0..count {
        let s = derive_seed(cfg.seed, tag::REPLICA, i as u64);
        let c = Configuration::sample(cfg.p, radius, s)?;
        let l = label_clusters(&c);
        w.write_record([
            i.to_string(),
            s.to_string(),
            c.open_edge_count().to_string(),
            c.edge_count().to_string(),
            l.cluster_count().to_string(),
            l.giant_size().to_string(),
            fmt_f64(giant_density(&l)),
        ])?;
    }
    let rows = w.into_inner().map_err(|e| crate::Error::Io(e.to_string()))?;
    let theta = csv_bytes(|b| write_theta_csv(b, &[est]))?;
    Ok(Outcome { artifacts: vec![Artifact::new("sample.csv", rows), Artifact::new("theta.csv", theta)], passed: None, warnings: vec![] })
}

fn beta(cfg: &RunConfig) -> Result<Outcome> {
    let scale = cfg.n_or(64) as u32;
    let replicas = cfg.replicas.unwrap_or(20);
    let mut artifacts = Vec::new();
    let mut warnings = Vec::new();
    let table_bytes = match cfg.dir {
        Some(dir) => {
            let e = estimate_direction(cfg.p, dir, scale, replicas, cfg.seed)?;
            if e.positivity_alarm {
                warnings.push(format!("positivity alarm along {:?}", e.direction));
            }
            let row = TableEntry {
                dir_x: e.direction.0,
                dir_y: e.direction.1,
                beta_mean: e.mean,
                beta_stderr: e.stderr,
                samples: e.count,
                scale,
            };
            let mut w = csv::Writer::from_writer(Vec::new());
            w.serialize(row)?;
            w.into_inner().map_err(|e| crate::Error::Io(e.to_string()))?
        }
        None => {
            let run = build_norm_table(cfg.p, cfg.dirs.unwrap_or(5), scale, replicas, cfg.seed, true)?;
            if run.positivity_alarm() {
                warnings.push("positivity alarm in the norm table".into());
            }
            csv_bytes(|b| run.table.write_csv(b))?
        }
    };
    artifacts.push(Artifact::new("beta.csv", table_bytes));
    if !cfg.n_list.is_empty() {
        let scales: Vec<u32> = cfg.n_list.iter().map(|&n| n as u32).collect();
        let r = concentration_report(cfg.p, unit(cfg.dir.unwrap_or((1.0, 0.0))), &scales, replicas, cfg.seed)?;
        artifacts.push(Artifact::new("concentration.csv", csv_bytes(|b| r.write_csv(b))?));
    }
    Ok(Outcome { artifacts, passed: None, warnings })
}

fn wulff(cfg: &RunConfig) -> Result<Outcome> {
    let norm = match cfg.norm_handle()? {
        Some(n) => n,
        None if cfg.p == 1.0 => NormHandle::L1,
        None => {
            let o = cfg.limit_options()?;
            let run = build_norm_table(cfg.p, o.table_dirs, o.table_scale, o.table_replicas, cfg.seed, true)?;
            NormHandle::Table(Arc::new(run.table))
        }
    };
    let shape = build_wulff(&norm, cfg.dirs.filter(|_| cfg.norm.is_some()).unwrap_or(DEFAULT_DIRECTIONS))?;
    let mut artifacts = vec![Artifact::new("wulff.json", shape.to_json()?.into_bytes())];
    artifacts.push(Artifact::new("wulff.svg", shape.to_svg().into_bytes()));
    if let NormHandle::Table(t) = &norm {
        artifacts.push(Artifact::new("beta.csv", csv_bytes(|b| t.write_csv(b))?));
    }
    Ok(Outcome { artifacts, passed: None, warnings: vec![] })
}

fn limit(cfg: &RunConfig, mode: IsoMode) -> Result<(iso::LimitRun, Vec<usize>, Vec<u64>)> {
    let defaults: &[usize] = match mode {
        IsoMode::Cheeger => &[16, 32],
        IsoMode::Profile => &[100, 400],
    };
    let ns = cfg.n_values(defaults);
    let seeds: Vec<u64> = (0..cfg.replicas.unwrap_or(5) as u64).map(|i| cfg.seed + i).collect();
    let run = iso::limit_report(cfg.p, &ns, &seeds, mode, &cfg.limit_options()?)?;
    Ok((run, ns, seeds))
}

#[derive(Serialize)]
struct LimitJson<'a> {
    phi_hat: f64,
    phi_stderr: f64,
    summaries: &'a [iso::LimitSummary],
    warnings: &'a [String],
}

fn isoperimetry(cfg: &RunConfig, mode: IsoMode) -> Result<Outcome> {
    let (run, _, _) = limit(cfg, mode)?;
    let rows = csv_bytes(|b| iso::write_iso_csv(b, &run.rows))?;
    let j = LimitJson { phi_hat: run.phi_hat, phi_stderr: run.phi_stderr, summaries: &run.summaries, warnings: &run.warnings };
    Ok(Outcome {
        artifacts: vec![Artifact::new("iso.csv", rows), Artifact::new("iso_summary.json", serde_json::to_string_pretty(&j)?.into_bytes())],
        passed: None,
        warnings: run.warnings.clone(),
    })
}

fn shapes(cfg: &RunConfig) -> Result<Outcome> {
    let mode = cfg.mode.unwrap_or(IsoMode::Cheeger);
    let (run, _, _) = limit(cfg, mode)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["mode", "n", "seed", "volume", "distance", "diameter", "relative", "shift_x", "shift_y"])?;
    let mut artifacts = Vec::new();
    for (row, set) in run.rows.iter().zip(&run.sets) {
        let sc = match mode {
            IsoMode::Cheeger => iso::ShapeScale::Cheeger { n: row.n },
            IsoMode::Profile => iso::ShapeScale::Profile { volume: row.n, theta: row.theta_hat },
        };
        let d = iso::shape_distance(&set.sites, &run.shape, sc)?;
        w.write_record([
            mode.to_string(),
            row.n.to_string(),
            row.seed.to_string(),
            set.volume().to_string(),
            fmt_f64(d.distance),
            fmt_f64(d.diameter),
            fmt_f64(d.relative),
            fmt_f64(d.shift.x),
            fmt_f64(d.shift.y),
        ])?;
        let svg = iso::overlay_svg(&set.sites, &run.shape, sc, d.shift);
        artifacts.push(Artifact::new(&format!("shape_n{}_seed{}.svg", row.n, row.seed), svg.into_bytes()));
    }
    let rows = w.into_inner().map_err(|e| crate::Error::Io(e.to_string()))?;
    artifacts.insert(0, Artifact::new("shapes.csv", rows));
    Ok(Outcome { artifacts, passed: None, warnings: run.warnings.clone() })
}

/// Packages acceptance results as a `validate` outcome.
pub fn validation_outcome(results: &[validation::CriterionResult]) -> Result<Outcome> {
    let passed = results.iter().all(|r| r.status != validation::Status::Fail);
    let bytes = csv_bytes(|b| validation::write_csv(b, results))?;
    Ok(Outcome { artifacts: vec![Artifact::new("validation.csv", bytes)], passed: Some(passed), warnings: vec![] })
}

/// Runs a configuration and returns its artifacts.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    if !(0.0..=1.0).contains(&cfg.p) {
        return Err(domain(format!("p = {} is not a probability", cfg.p)));
    }
    match cfg.command {
        Command::Sample => sample(cfg),
        Command::Beta => beta(cfg),
        Command::Wulff => wulff(cfg),
        Command::Cheeger => isoperimetry(cfg, IsoMode::Cheeger),
        Command::Profile => isoperimetry(cfg, IsoMode::Profile),
        Command::Shapes => shapes(cfg),
        Command::Validate => validation_outcome(&validation::run_all(cfg.quick)),
    }
}

/// Writes the artifacts and `manifest.json` into `dir`.
pub fn write_run(dir: &std::path::Path, cfg: &RunConfig, outcome: &Outcome) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for a in &outcome.artifacts {
        let p = dir.join(&a.name);
        std::fs::write(&p, &a.bytes)?;
        paths.push(p);
    }
    let m = dir.join("manifest.json");
    std::fs::write(&m, Manifest::new(cfg, outcome).to_json()?)?;
    paths.push(m);
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_at_p_one() {
        let mut c = RunConfig::new(Command::Beta);
        c.p = 1.0;
        c.dir = Some((1.0, 0.0));
        c.n = Some(64);
        c.replicas = Some(3);
        let out = execute(&c).unwrap();
        let text = String::from_utf8(out.artifacts[0].bytes.clone()).unwrap();
        assert_eq!(text.lines().next().unwrap(), "dir_x,dir_y,beta_mean,beta_stderr,samples,scale");
        assert!(text.contains(",0.984375,0.0,"), "{text}");
    }

    #[test]
    fn wulff_l1() {
        let mut c = RunConfig::new(Command::Wulff);
        c.norm = Some("l1".into());
        let out = execute(&c).unwrap();
        let j: serde_json::Value = serde_json::from_slice(&out.artifacts[0].bytes).unwrap();
        assert!((j["phi"].as_f64().unwrap() - 4.0).abs() < 1e-9);
        assert_eq!(out.artifacts[1].format(), Format::Svg);
    }

    #[test]
    fn manifest_roundtrip() {
        let mut c = RunConfig::new(Command::Sample);
        c.n = Some(8);
        c.replicas = Some(2);
        let out = execute(&c).unwrap();
        let m = Manifest::new(&c, &out);
        let back: Manifest = serde_json::from_str(&m.to_json().unwrap()).unwrap();
        assert_eq!(back.config, c);
        assert_eq!(execute(&back.config).unwrap().artifacts, out.artifacts);
    }
}
