use std::io::Write;

use serde::{Deserialize, Serialize};

use super::estimate::{check_supercritical, estimate_direction_with, NormEstimate};
use crate::error::{domain, Result};
use crate::rng;
use crate::stats;

pub const DEVIATION_LEVELS: [f64; 3] = [0.05, 0.1, 0.2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleRow {
    pub scale: u32,
    pub mean: f64,
    pub sd: f64,
    /// Standard error of `sd` under a normal approximation.
    pub sd_stderr: f64,
    /// Fraction of replicas with `|value/β̂ − 1| > ε`, one per deviation level.
    pub deviation: [f64; 3],
    pub resampled: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationReport {
    pub p: f64,
    pub direction: (f64, f64),
    /// Reference value: the mean at the largest scale.
    pub beta_hat: f64,
    pub rows: Vec<ScaleRow>,
}

impl ConcentrationReport {
    /// Whether the sample deviation strictly decreases across scales once a
    /// tolerance of `k` combined standard errors is allowed.
    pub fn sd_decreasing(&self, k: f64) -> bool {
        self.rows.windows(2).all(|w| w[1].sd < w[0].sd + k * w[0].sd_stderr.hypot(w[1].sd_stderr))
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["scale", "mean", "sd", "sd_stderr", "dev_0.05", "dev_0.1", "dev_0.2", "beta_hat"])?;
        for r in &self.rows {
            wr.write_record([
                r.scale.to_string(),
                stats::fmt_f64(r.mean),
                stats::fmt_f64(r.sd),
                stats::fmt_f64(r.sd_stderr),
                stats::fmt_f64(r.deviation[0]),
                stats::fmt_f64(r.deviation[1]),
                stats::fmt_f64(r.deviation[2]),
                stats::fmt_f64(self.beta_hat),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }
}

pub(crate) fn report_from(p: f64, direction: (f64, f64), estimates: &[NormEstimate]) -> ConcentrationReport {
    let beta_hat = estimates.last().map(|e| e.mean).unwrap_or(0.0);
    let rows = estimates
        .iter()
        .map(|e| {
            let sd = stats::sample_sd(&e.samples);
            let mut deviation = [0.0; 3];
            for (d, eps) in deviation.iter_mut().zip(DEVIATION_LEVELS) {
                let hits = e.samples.iter().filter(|&&v| (v / beta_hat - 1.0).abs() > eps).count();
                *d = hits as f64 / e.samples.len() as f64;
            }
            ScaleRow {
                scale: e.scale,
                mean: e.mean,
                sd,
                sd_stderr: stats::sd_stderr(&e.samples),
                deviation,
                resampled: e.resampled,
            }
        })
        .collect();
    ConcentrationReport { p, direction, beta_hat, rows }
}

/// Spread of `b([0],[n·dir])/n` across increasing scales.
pub fn concentration_report(p: f64, direction: (f64, f64), scales: &[u32], replicas: usize, seed: u64) -> Result<ConcentrationReport> {
    check_supercritical(p)?;
    if scales.is_empty() || scales.windows(2).any(|w| w[0] >= w[1]) {
        return Err(domain("scales must be nonempty and strictly increasing"));
    }
    let estimates = scales
        .iter()
        .map(|&n| estimate_direction_with(p, direction, n, replicas, rng::derive_seed(seed, rng::tag::AUX, n as u64), false))
        .collect::<Result<Vec<_>>>()?;
    Ok(report_from(p, direction, &estimates))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_one_has_no_spread() {
        let r = concentration_report(1.0, (1.0, 0.0), &[4, 8, 16], 3, 0).unwrap();
        assert!(r.rows.iter().all(|row| row.sd == 0.0));
        assert_eq!(r.beta_hat, 15.0 / 16.0);
    }

    #[test]
    fn scales_must_increase() {
        assert!(concentration_report(0.7, (1.0, 0.0), &[8, 8], 3, 0).is_err());
    }
}
