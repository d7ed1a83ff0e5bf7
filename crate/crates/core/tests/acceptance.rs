//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! and enforcing its runtime budget. All equalities are exact.

use grouplink::verify::*;
use std::time::Instant;

fn criterion(n: usize, name: &str, budget_secs: f64, run: impl FnOnce() -> (bool, String)) {
    let start = Instant::now();
    let (pass, detail) = run();
    let elapsed = start.elapsed().as_secs_f64();
    let status = if pass && elapsed <= budget_secs {
        "PASS"
    } else {
        "FAIL"
    };
    println!("criterion {n} ({name}): {status} [{elapsed:.1}s / {budget_secs:.0}s] {detail}");
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
    assert!(
        elapsed <= budget_secs,
        "criterion {n} ({name}) exceeded budget: {elapsed:.1}s > {budget_secs:.0}s"
    );
}

fn summarize(report: &SuiteReport) -> (bool, String) {
    let failed: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.as_str())
        .collect();
    if failed.is_empty() {
        (true, format!("{} checks", report.checks.len()))
    } else {
        let witness = report
            .checks
            .iter()
            .find(|c| !c.pass)
            .and_then(|c| c.witness.clone())
            .unwrap_or_default();
        (false, format!("failed: {failed:?} [{witness}]"))
    }
}

#[test]
fn criterion_1_yang_baxter() {
    criterion(1, "yang-baxter", 10.0, || {
        summarize(&run_yangbaxter(false).unwrap())
    });
}

#[test]
fn criterion_2_modular_suite() {
    criterion(2, "modular suite", 30.0, || {
        summarize(&run_modular(false).unwrap())
    });
}

#[test]
fn criterion_3_character_suite() {
    criterion(3, "character suite", 5.0, || {
        summarize(&run_character(false).unwrap())
    });
}

#[test]
fn criterion_4_markov_invariance() {
    criterion(4, "markov invariance", 60.0, || {
        summarize(&run_markov(0xACCE97, 200, false).unwrap())
    });
}

#[test]
fn criterion_5_bridge_identity() {
    criterion(5, "bridge identity", 120.0, || {
        let report = run_bridge(0xB41D6E, 50, false).unwrap();
        // only the hom-count bridge belongs to this criterion
        let bridge: Vec<_> = report
            .checks
            .iter()
            .filter(|c| c.name.starts_with("lambda-vs-homcount"))
            .collect();
        let pass = !bridge.is_empty() && bridge.iter().all(|c| c.pass);
        (pass, format!("{} checks", bridge.len()))
    });
}

#[test]
fn criterion_6_closed_form_anchors() {
    criterion(6, "closed-form anchors", 5.0, || {
        summarize(&run_anchors().unwrap())
    });
}

#[test]
fn criterion_7_turaev_reidemeister() {
    criterion(7, "turaev + reidemeister", 60.0, || {
        let t = run_turaev(0x7A2AEF, false).unwrap();
        let r = run_reidemeister(false).unwrap();
        let (tp, td) = summarize(&t);
        let (rp, rd) = summarize(&r);
        (tp && rp, format!("turaev {td}; reidemeister {rd}"))
    });
}

#[test]
fn criterion_8_kirby_suite() {
    criterion(8, "kirby suite", 120.0, || {
        summarize(&run_kirby(false).unwrap())
    });
}

#[test]
fn criterion_9_calibration() {
    criterion(9, "braid-diagram calibration", 60.0, || {
        let report = run_bridge(0xCA11B8, 1, false).unwrap();
        let cal: Vec<_> = report
            .checks
            .iter()
            .filter(|c| c.name.starts_with("calibration"))
            .collect();
        let pass = !cal.is_empty() && cal.iter().all(|c| c.pass);
        (pass, format!("{} checks", cal.len()))
    });
}

#[test]
fn criterion_10_negative_controls() {
    criterion(10, "negative controls", 240.0, || {
        let mutated: Vec<(&str, SuiteReport)> = vec![
            ("yangbaxter", run_yangbaxter(true).unwrap()),
            ("modular", run_modular(true).unwrap()),
            ("character", run_character(true).unwrap()),
            ("markov", run_markov(1, 40, true).unwrap()),
            ("turaev", run_turaev(1, true).unwrap()),
            ("reidemeister", run_reidemeister(true).unwrap()),
            ("kirby", run_kirby(true).unwrap()),
            ("bridge", run_bridge(1, 10, true).unwrap()),
        ];
        for (name, report) in &mutated {
            if report.all_pass() {
                return (false, format!("mutated {name} suite did not fail"));
            }
            let witnessed = report
                .checks
                .iter()
                .any(|c| !c.pass && c.witness.is_some());
            if !witnessed {
                return (false, format!("mutated {name} suite failed without witness"));
            }
        }
        (true, format!("{} mutated suites all detected", mutated.len()))
    });
}
