//! One test per acceptance criterion. Each prints a single pass/fail line.

use perciso::validation::{run, Status};

fn check(id: u8) {
    let r = run(id);
    println!("{}", r.line());
    assert_eq!(r.status, Status::Pass, "{}", r.line());
}

#[test]
fn c01_interface_bijection() {
    check(1);
}

#[test]
fn c02_boundary_length_bounds() {
    check(2);
}

#[test]
fn c03_star_concatenation() {
    check(3);
}

#[test]
fn c04_solver_matches_oracle() {
    check(4);
}

#[test]
fn c05_triangle_and_chemical_bounds() {
    check(5);
}

#[test]
fn c06_wulff_goldens() {
    check(6);
}

#[test]
fn c07_exact_values_at_p_one() {
    check(7);
}

#[test]
fn c08_candidate_scaling_at_p_one() {
    check(8);
}

#[test]
fn c09_concentration_trend() {
    check(9);
}

#[test]
fn c10_limit_self_consistency() {
    check(10);
}

#[test]
fn c11_shape_diagnostic() {
    check(11);
}

#[test]
fn c12_determinism() {
    check(12);
}
