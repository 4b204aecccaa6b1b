//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test --test acceptance -- --nocapture`).

use tetraphase::acceptance::{self, CriterionOutcome};

const SEED: u64 = 20_240_817;

fn check(outcome: CriterionOutcome) {
    println!("{}", outcome.line());
    assert!(outcome.passed, "{}", outcome.line());
}

#[test]
fn criterion_01_schlafli_identity() {
    check(acceptance::criterion_01(SEED));
}

#[test]
fn criterion_02_jacobian_symmetry_and_euler() {
    check(acceptance::criterion_02(SEED));
}

#[test]
fn criterion_03_generating_function() {
    check(acceptance::criterion_03(SEED));
}

#[test]
fn criterion_04_contour_holonomy() {
    check(acceptance::criterion_04(SEED));
}

#[test]
fn criterion_05_per_leg_actions() {
    check(acceptance::criterion_05(SEED));
}

#[test]
fn criterion_06_stokes_and_reduced_contour() {
    check(acceptance::criterion_06(SEED));
}

#[test]
fn criterion_07_reduction_equivariance() {
    check(acceptance::criterion_07(SEED));
}

#[test]
fn criterion_08_character_formula() {
    check(acceptance::criterion_08(SEED));
}

#[test]
fn criterion_09_exact_6j_oracle() {
    check(acceptance::criterion_09(SEED));
}

#[test]
fn criterion_10_asymptotic_convergence() {
    check(acceptance::criterion_10(SEED));
}

#[test]
fn criterion_11_qdeform_coproduct() {
    check(acceptance::criterion_11(SEED));
}
