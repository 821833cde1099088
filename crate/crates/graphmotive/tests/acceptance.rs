//! Acceptance suite: one test per criterion, each printing its pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion report, or use the `graphmotive corpus` subcommand.

use graphmotive::corpus::run_criterion;

fn check(id: usize) {
    let outcome = run_criterion(id);
    println!("{}", outcome.line());
    assert!(outcome.passed, "{}", outcome.line());
}

#[test]
fn criterion_01_lemon_family() {
    check(1);
}

#[test]
fn criterion_02_polygon_chains() {
    check(2);
}

#[test]
fn criterion_03_banana_family() {
    check(3);
}

#[test]
fn criterion_04_deletion_contraction_counting() {
    check(4);
}

#[test]
fn criterion_05_master_class_consistency() {
    check(5);
}

#[test]
fn criterion_06_tutte_oracle_and_specializations() {
    check(6);
}

#[test]
fn criterion_07_euler_characteristic_series() {
    check(7);
}

#[test]
fn criterion_08_universal_recursion() {
    check(8);
}

#[test]
fn criterion_09_characteristic_class_prediction() {
    check(9);
}

#[test]
fn criterion_10_hopf_and_birkhoff() {
    check(10);
}

#[test]
fn criterion_11_interpolation_fallback() {
    check(11);
}
