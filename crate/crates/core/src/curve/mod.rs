//! Passing between lattice circuits and plane curves. Circuits become
//! simple polygons through polygonal approximation and uncrossing; convex
//! polygons become circuits through near-optimal right-most paths. Winding
//! numbers, enclosed volumes and ℓ∞ Hausdorff distances support both.

mod base;
mod convert;
mod region;
mod simple;

pub use base::{hull_area, in_hull, odd_area, poly_approx, symmetric_difference_area, winding_number, Curve, Winding};
pub use convert::{
    circuit_to_curve, curve_to_circuit, thin_polygon, ChordRule, CircuitToCurveOptions, CircuitToCurveReport, CurveToCircuitOptions,
    CurveToCircuitReport,
};
pub use region::{
    hausdorff, hausdorff_with_step, interface_curve, is_counterclockwise, outer_boundary_circuit, vol, DiscreteRegion,
    SetRef,
};
pub use simple::{make_simple, SimpleReport, CROSSING_BUDGET};
