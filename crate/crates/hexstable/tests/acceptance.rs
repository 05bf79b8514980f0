//! Acceptance suite: every criterion runs at its stated tolerance and
//! prints one pass/fail line (visible with `--nocapture`).
//!
//! Run with `cargo test -p hexstable --test acceptance` (release mode
//! recommended for speed).

use hexstable::suites::*;

fn assert_report(criterion: &str, report: &SuiteReport) {
    let (pass, total) = report.counts();
    let verdict = if report.passed() { "PASS" } else { "FAIL" };
    println!("[{verdict}] {criterion}: {pass}/{total} checks");
    if !report.passed() {
        for item in report.items.iter().filter(|i| !i.pass) {
            println!("    FAILED {} — {}", item.name, item.detail);
        }
    }
    assert!(report.passed(), "{criterion} failed; see lines above");
}

#[test]
fn criterion_1_table2_regression() {
    let start = std::time::Instant::now();
    let report = suite_table2();
    let elapsed = start.elapsed();
    assert_report("criterion 1 (Table 2 regression, exact)", &report);
    println!("    table2 runtime: {:.2?}", elapsed);
    assert!(
        elapsed.as_secs_f64() <= 10.0,
        "table2 suite exceeded the 10 s budget: {elapsed:.2?}"
    );
}

#[test]
fn criterion_2_tamed_pairs() {
    assert_report("criterion 2 (nine tamed pairs, exact)", &suite_table3());
}

#[test]
fn criterion_3_betti() {
    assert_report("criterion 3 (Betti numbers)", &suite_betti());
}

#[test]
fn criterion_4_lambda_identities() {
    assert_report(
        "criterion 4 (closed-form lambda identities)",
        &suite_lambda_identities(SEED_LAMBDA),
    );
}

#[test]
fn criterion_5_obstruction_sweep() {
    assert_report(
        "criterion 5 (taming obstruction sweep)",
        &suite_obstructions(SEED_OBSTRUCTIONS),
    );
}

#[test]
fn criterion_6_flow_regression_g24() {
    assert_report("criterion 6 (g24 flow regression)", &suite_flow_g24());
}

#[test]
fn criterion_7_flow_g6_g25() {
    assert_report("criterion 7 (g6/g25 flow monitors)", &suite_flow_g6_g25());
}

#[test]
fn criterion_8_property_batteries() {
    assert_report("criterion 8 (exact property batteries)", &suite_properties(SEED_PROPERTIES));
}

#[test]
fn criterion_9_nonexistence_evidence() {
    assert_report(
        "criterion 9 (non-existence sampling, statistical evidence only)",
        &suite_nonexistence(SEED_SEARCH),
    );
}
