//! Acceptance gate: one test per validation criterion, each printing one
//! PASS/FAIL line per check with its pinned tolerance.
//!
//! The coefficient checks of criteria 3, 4 and 6 are split out from the
//! scaling checks of the same criteria: the engine reproduces every
//! scaling law, but its thermal and accelerated plateau normalizations
//! disagree with the quoted closed forms by constant factors (2 pi, 4 pi,
//! and a factor 2 in the ratio law). Those three tests fail and are
//! expected to fail; the tolerances are not adjusted to hide it. See the
//! README for the full accounting.

use std::time::{Duration, Instant};

use cpair_core::validation::{
    check_accelerated, check_correction_scaling, check_far_zone, check_invariants,
    check_near_zone, check_oracle_equivalence, check_ratio_law, check_thermal_classical,
    check_unruh_matching, CheckResult,
};
use cpair_core::QuadratureSpec;

fn report(results: &[CheckResult], started: Instant, budget: Duration) {
    for r in results {
        println!("{r}");
    }
    let elapsed = started.elapsed();
    println!("elapsed {:.2?} (budget {:.0?})", elapsed, budget);
    assert!(
        elapsed <= budget,
        "criterion exceeded its time budget: {elapsed:.2?} > {budget:.0?}"
    );
    let failures: Vec<&CheckResult> = results.iter().filter(|r| !r.pass).collect();
    assert!(failures.is_empty(), "{} check(s) failed", failures.len());
}

fn split(results: Vec<CheckResult>, coefficient: bool) -> Vec<CheckResult> {
    results
        .into_iter()
        .filter(|r| r.name.contains("coefficient") == coefficient)
        .collect()
}

#[test]
fn criterion_1_static_far_zone() {
    let t = Instant::now();
    let r = check_far_zone(&QuadratureSpec::default());
    report(&r, t, Duration::from_secs(10));
}

#[test]
fn criterion_2_static_near_zone() {
    let t = Instant::now();
    let r = check_near_zone(&QuadratureSpec::default());
    report(&r, t, Duration::from_secs(10));
}

#[test]
fn criterion_3_thermal_classical_scaling() {
    let t = Instant::now();
    let r = split(check_thermal_classical(&QuadratureSpec::default()), false);
    report(&r, t, Duration::from_secs(30));
}

// Expected failure: the engine plateau is 2 pi times the quoted closed form.
#[test]
fn criterion_3_thermal_classical_coefficient() {
    let t = Instant::now();
    let r = split(check_thermal_classical(&QuadratureSpec::default()), true);
    report(&r, t, Duration::from_secs(30));
}

#[test]
fn criterion_4_accelerated_scaling() {
    let t = Instant::now();
    let r = split(check_accelerated(&QuadratureSpec::default()), false);
    report(&r, t, Duration::from_secs(60));
}

// Expected failure: the engine plateau is 4 pi times the quoted closed form.
#[test]
fn criterion_4_accelerated_coefficient() {
    let t = Instant::now();
    let r = split(check_accelerated(&QuadratureSpec::default()), true);
    report(&r, t, Duration::from_secs(60));
}

#[test]
fn criterion_5_unruh_matching() {
    let t = Instant::now();
    let r = check_unruh_matching(&QuadratureSpec::default());
    report(&r, t, Duration::from_secs(60));
}

// Expected failure: the engine ratio sits at 2x the quoted 2/(a z)^2 law,
// consistent with the 2 pi / 4 pi plateau mismatch above.
#[test]
fn criterion_6_crossover_ratio_law() {
    let t = Instant::now();
    let r = check_ratio_law(&QuadratureSpec::default());
    report(&r, t, Duration::from_secs(60));
}

#[test]
fn criterion_7_oracle_equivalence() {
    let t = Instant::now();
    let r = check_oracle_equivalence(&QuadratureSpec::default());
    report(&r, t, Duration::from_secs(300));
}

#[test]
fn criterion_8_module_invariants() {
    let t = Instant::now();
    let r = check_invariants(&QuadratureSpec::default());
    report(&r, t, Duration::from_secs(60));
}

#[test]
fn criterion_9_correction_scaling() {
    let t = Instant::now();
    let r = check_correction_scaling(&QuadratureSpec::default());
    report(&r, t, Duration::from_secs(120));
}
