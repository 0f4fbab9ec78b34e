//! Wulff-shape isoperimetry for supercritical bond percolation on Z², built
//! on right-most paths and the boundary norm they induce.
//!
//! The crate is organised bottom-up: [`lattice`] fixes planar conventions,
//! [`percolation`] samples configurations and clusters, [`paths`] holds the
//! right-most path calculus and distance solvers, [`norm`] estimates the
//! boundary norm, [`wulff`] builds the limit shape, [`curve`] converts between
//! lattice circuits and plane curves, and [`iso`] measures isoperimetric
//! quantities against their predicted limits. [`experiment`] drives seeded
//! runs with reproducible artifacts, and [`validation`] holds the acceptance
//! checks.

// `!(x > 0.0)` also rejects NaN, which is the point.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curve;
pub mod error;
pub mod experiment;
pub mod geom;
pub mod iso;
pub mod lattice;
pub mod norm;
pub mod parallel;
pub mod paths;
pub mod percolation;
pub mod rng;
pub mod stats;
pub mod validation;
pub mod wulff;

pub use error::{Error, Result};
