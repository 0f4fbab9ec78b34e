//! The right-most path calculus. Paths carry right boundaries and
//! interfaces; the cost `b` counts open boundary edges, and the solvers here
//! minimise it, checked against exhaustive enumeration.

mod enumerate;
mod epsilon;
mod interface;
mod path;
mod solver;
mod walker;

pub use enumerate::{enumerate_rightmost, exhaustive_b, exhaustive_bhat, for_each_rightmost, random_rightmost, Scope};
pub use epsilon::{epsilon_optimal, subdivided_path, EpsilonReport};
pub use interface::{dual_path, from_interface, is_medial_walk, to_interface, Interface, InterfaceVisit, VisitTag};
pub use path::{h, is_open_path, is_rightmost, path_costs, right_boundary, star_concat, LatticePath, PathCosts, RightBoundary};
pub use solver::{solve_b, solve_b_with, solve_bhat, solve_bhat_with, DistanceResult, SolverOptions, SolverStatus};
