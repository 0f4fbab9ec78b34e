//! Isoperimetry on the giant cluster. Small hosts are solved exactly; larger
//! ones get a Wulff-shape candidate from above and a circuit audit from
//! below, and limit reports compare both with the predicted constants.

mod audit;
mod candidate;
mod exact;
mod host;
mod report;
mod shape;

pub use audit::{lower_bound_audit, AuditLink, AuditReport, AUDIT_ZETA};
pub use candidate::{
    candidate_box_radius, candidate_scale, wulff_candidate, CandidateReport, IsoMode, CANDIDATE_EPSILON, SHRINK,
};
pub use exact::{cheeger_exact, profile_exact, ENUMERATION_BUDGET};
pub use host::{boundary_of, host_box_radius, is_connected, CandidateSet, Host, HostTag};
pub use report::{
    limit_report, shape_for, write_iso_csv, IsoReport, LimitOptions, LimitRun, LimitSummary, EXACT_CHEEGER_MAX_N,
    EXACT_PROFILE_MAX_R,
};
pub use shape::{overlay_svg, shape_distance, ShapeDistance, ShapeScale};
