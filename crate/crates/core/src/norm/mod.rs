//! Monte Carlo estimation of the right-boundary norm.
//!
//! `b([0],[n·x])/n` is measured on independent configurations, one
//! direction at a time. A [`NormTable`] stores the first-octant estimates and
//! extends them to the plane by symmetry and homogeneity.

mod concentration;
mod estimate;
mod table;

pub use concentration::{concentration_report, ConcentrationReport, ScaleRow, DEVIATION_LEVELS};
pub use estimate::{
    box_radius_for, dihedral_images, estimate_direction, estimate_direction_with, replica_seed, sample_direction, unit,
    DirectionalSample, NormEstimate, RETRY_BUDGET,
};
pub use table::{build_norm_table, octant_angles, NormTable, NormTableRun, TableEntry, LINEAR_IN_ANGLE};
