use std::f64::consts::FRAC_PI_4;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::estimate::{check_supercritical, estimate_direction_with, NormEstimate};
use crate::error::{domain, Error, Result};
use crate::rng;

/// One row of a norm table. `dir` is a unit vector in the first octant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub dir_x: f64,
    pub dir_y: f64,
    pub beta_mean: f64,
    pub beta_stderr: f64,
    pub samples: usize,
    pub scale: u32,
}

impl TableEntry {
    pub fn angle(&self) -> f64 {
        self.dir_y.atan2(self.dir_x)
    }
}

/// Directional estimates covering angles `[0, π/4]`, extended to the plane
/// by the symmetries of the square and by homogeneity. Between sampled
/// directions the value per unit Euclidean length is linear in angle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormTable {
    entries: Vec<TableEntry>,
    pub symmetrized: bool,
    pub interpolation: String,
}

pub const LINEAR_IN_ANGLE: &str = "linear-in-angle";

const ANGLE_TOL: f64 = 1e-9;

/// Angles of `k` evenly spaced directions spanning the first octant.
pub fn octant_angles(k: usize) -> Vec<f64> {
    (0..k).map(|j| FRAC_PI_4 * j as f64 / (k - 1) as f64).collect()
}

impl NormTable {
    /// Validates and sorts the entries. They must lie in the first octant,
    /// include both ends, and carry positive values.
    pub fn new(mut entries: Vec<TableEntry>, symmetrized: bool) -> Result<Self> {
        if entries.len() < 2 {
            return Err(domain("a norm table needs at least two directions"));
        }
        for e in &mut entries {
            let n = e.dir_x.hypot(e.dir_y);
            if !(n > 0.0) || !e.beta_mean.is_finite() || e.beta_mean <= 0.0 {
                return Err(domain(format!("invalid table row ({}, {}) -> {}", e.dir_x, e.dir_y, e.beta_mean)));
            }
            e.dir_x /= n;
            e.dir_y /= n;
            let a = e.angle();
            if !(-ANGLE_TOL..=FRAC_PI_4 + ANGLE_TOL).contains(&a) {
                return Err(domain(format!("direction ({}, {}) is outside the first octant", e.dir_x, e.dir_y)));
            }
        }
        entries.sort_by(|a, b| a.angle().total_cmp(&b.angle()));
        if entries[0].angle() > ANGLE_TOL || entries.last().unwrap().angle() < FRAC_PI_4 - ANGLE_TOL {
            return Err(domain("table directions must include angles 0 and π/4"));
        }
        Ok(NormTable { entries, symmetrized, interpolation: LINEAR_IN_ANGLE.into() })
    }

    /// A table sampled from an analytic norm, handy for tests.
    pub fn from_fn(k: usize, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let entries = octant_angles(k)
            .into_iter()
            .map(|a| {
                let (s, c) = a.sin_cos();
                TableEntry { dir_x: c, dir_y: s, beta_mean: f(c, s), beta_stderr: 0.0, samples: 0, scale: 0 }
            })
            .collect();
        NormTable::new(entries, true)
    }

    pub fn entries(&self) -> &[TableEntry] {
        &self.entries
    }

    pub fn max_value(&self) -> f64 {
        self.entries.iter().map(|e| e.beta_mean).fold(0.0, f64::max)
    }

    pub fn max_stderr(&self) -> f64 {
        self.entries.iter().map(|e| e.beta_stderr).fold(0.0, f64::max)
    }

    /// Value per unit Euclidean length at angle `a ∈ [0, π/4]`.
    fn unit_value(&self, a: f64) -> f64 {
        let e = &self.entries;
        let i = e.partition_point(|t| t.angle() <= a);
        if i == 0 {
            return e[0].beta_mean;
        }
        if i == e.len() {
            return e[e.len() - 1].beta_mean;
        }
        let (lo, hi) = (&e[i - 1], &e[i]);
        let span = hi.angle() - lo.angle();
        if span <= 0.0 {
            return lo.beta_mean;
        }
        let t = (a - lo.angle()) / span;
        lo.beta_mean + t * (hi.beta_mean - lo.beta_mean)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let (a, b) = (x.abs(), y.abs());
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big == 0.0 {
            return 0.0;
        }
        self.unit_value(small.atan2(big)) * big.hypot(small)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        for e in &self.entries {
            wr.serialize(e)?;
        }
        wr.flush()?;
        Ok(())
    }

    /// Reads a table written by [`NormTable::write_csv`]. Such tables are
    /// treated as symmetrized since evaluation folds into the first octant.
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let entries = rd.deserialize().collect::<std::result::Result<Vec<TableEntry>, _>>()?;
        NormTable::new(entries, true)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        NormTable::read_csv(std::fs::File::open(path)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormTableRun {
    pub table: NormTable,
    pub estimates: Vec<NormEstimate>,
}

impl NormTableRun {
    pub fn resampled(&self) -> u32 {
        self.estimates.iter().map(|e| e.resampled).sum()
    }

    pub fn fallbacks(&self) -> u32 {
        self.estimates.iter().map(|e| e.fallbacks).sum()
    }

    pub fn positivity_alarm(&self) -> bool {
        self.estimates.iter().any(|e| e.positivity_alarm)
    }
}

/// Estimates the norm along `k` directions spanning the first octant.
pub fn build_norm_table(p: f64, k: usize, scale: u32, replicas: usize, seed: u64, symmetrize: bool) -> Result<NormTableRun> {
    check_supercritical(p)?;
    if k < 2 {
        return Err(domain("need at least two directions per octant"));
    }
    let mut estimates = Vec::with_capacity(k);
    for (j, a) in octant_angles(k).into_iter().enumerate() {
        let (s, c) = a.sin_cos();
        let dseed = rng::derive_seed(seed, rng::tag::AUX, j as u64);
        estimates.push(estimate_direction_with(p, (c, s), scale, replicas, dseed, symmetrize)?);
    }
    let entries = estimates
        .iter()
        .map(|e| TableEntry {
            dir_x: e.direction.0,
            dir_y: e.direction.1,
            beta_mean: e.mean,
            beta_stderr: e.stderr,
            samples: e.count,
            scale: e.scale,
        })
        .collect();
    let table = NormTable::new(entries, symmetrize).map_err(|e| match e {
        Error::Domain(m) => Error::Degenerate(format!("estimated table is unusable: {m}")),
        e => e,
    })?;
    Ok(NormTableRun { table, estimates })
}
