//! The continuum variational problem. Wulff shapes come from half-plane
//! intersection, and `φ` is the ρ-length of their unit-area boundary.

mod polygon;
mod shape;

pub use polygon::Polygon;
pub use shape::{
    bonnesen_deficiency, build_wulff, dual_norm_eval, len_rho, len_rho_closed, unit_area_ellipse, variational_phi,
    BonnesenReport, NormHandle, VariationalReport, WulffShape, DEFAULT_DIRECTIONS,
};
