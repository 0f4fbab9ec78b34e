use serde::{Deserialize, Serialize};

use super::host::CandidateSet;
use crate::curve::{circuit_to_curve, hull_area, outer_boundary_circuit, vol, CircuitToCurveOptions, CircuitToCurveReport};
use crate::error::{precondition, Result};
use crate::paths::path_costs;
use crate::percolation::{ClusterLabeling, Configuration};
use crate::wulff::NormHandle;

/// Default volume exponent for audits.
pub const AUDIT_ZETA: f64 = 0.45;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditLink {
    pub label: String,
    pub value: f64,
    /// `value − next value`; negative when this link of the chain fails.
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub boundary: usize,
    pub volume: usize,
    pub circuit_len: usize,
    pub b_gamma: u32,
    /// `U ⊆ vol(γ)`.
    pub contained: bool,
    /// `b(γ) ≤ |∂U|`.
    pub b_bounded: bool,
    pub curve: CircuitToCurveReport,
    pub links: Vec<AuditLink>,
    /// `|∂U|/√|U|`.
    pub scaled_boundary: f64,
    /// `(1−ε)θ̂^{−1/2}φ̂`.
    pub scaled_bound: f64,
}

impl AuditReport {
    /// End-to-end bound `|∂U| ≥ (1−ε)θ̂^{−1/2}φ̂√|U|`.
    pub fn chain_holds(&self) -> bool {
        self.scaled_boundary >= self.scaled_bound
    }

    pub fn structural_ok(&self) -> bool {
        self.contained && self.b_bounded
    }
}

/// Lower-bound audit of a connected set: traces its outer boundary circuit
/// `γ`, checks `U ⊆ vol(γ)` and `b(γ) ≤ |∂U|`, converts `γ` to a curve `λ`
/// and reports each link of
/// `|∂U| ≥ b(γ) ≥ (1−ε)len_β(λ) ≥ (1−ε)φ̂√Leb(λ) ≥ (1−ε)θ̂^{−1/2}φ̂√|vol(γ)∩C∞| ≥ (1−ε)θ̂^{−1/2}φ̂√|U|`.
#[allow(clippy::too_many_arguments)]
pub fn lower_bound_audit(
    cfg: &Configuration,
    labeling: &ClusterLabeling,
    n: usize,
    zeta: f64,
    u: &CandidateSet,
    norm: &NormHandle,
    phi: f64,
    theta: f64,
    eps: f64,
) -> Result<AuditReport> {
    if !u.connected {
        return Err(precondition("audited set must be connected"));
    }
    let floor = (n as f64).powf(zeta);
    if (u.volume() as f64) < floor {
        return Err(precondition(format!("|U| = {} is below n^ζ = {floor:.3}", u.volume())));
    }
    let set = u.site_set();
    let gamma = outer_boundary_circuit(&set, |k| cfg.is_open(k))?;
    let region = vol(&gamma)?;
    let b_gamma = path_costs(&gamma, cfg)?.b;
    let opts = CircuitToCurveOptions { enforce_premises: false, ..Default::default() };
    let (lambda, curve) = circuit_to_curve(&gamma, cfg, eps, norm, &opts)?;
    let leb = hull_area(&lambda);
    let cluster_vol = region.sites.iter().filter(|&&s| labeling.in_giant(s)).count();
    let k = (1.0 - eps) * phi / theta.sqrt();
    let values = [
        ("|∂U|", u.boundary as f64),
        ("b(γ)", b_gamma as f64),
        ("(1−ε)len_β(λ)", (1.0 - eps) * lambda.length(norm)),
        ("(1−ε)φ̂√Leb(λ)", (1.0 - eps) * phi * leb.sqrt()),
        ("(1−ε)θ̂^{−1/2}φ̂√|vol(γ)∩C∞|", k * (cluster_vol as f64).sqrt()),
        ("(1−ε)θ̂^{−1/2}φ̂√|U|", k * (u.volume() as f64).sqrt()),
    ];
    let links = values
        .iter()
        .enumerate()
        .map(|(i, &(label, value))| AuditLink {
            label: label.to_string(),
            value,
            slack: values.get(i + 1).map_or(0.0, |next| value - next.1),
        })
        .collect();
    Ok(AuditReport {
        boundary: u.boundary,
        volume: u.volume(),
        circuit_len: gamma.len(),
        b_gamma,
        contained: set.iter().all(|&s| region.contains(s)),
        b_bounded: b_gamma as usize <= u.boundary,
        curve,
        links,
        scaled_boundary: u.boundary as f64 / (u.volume() as f64).sqrt(),
        scaled_bound: k,
    })
}
