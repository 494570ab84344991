use std::io::Write;
use std::time::Instant;

use rootdatum::acceptance::{run_criterion, AcceptanceOptions, CRITERIA};

#[test]
fn acceptance_criteria() {
    let opts = AcceptanceOptions::from_env();
    // Written to the raw handle so the report shows even when the test passes.
    let mut out = std::io::stdout().lock();
    writeln!(out, "\nacceptance suite, seed {}", opts.seed).unwrap();
    let mut failed = Vec::new();
    for (id, name) in CRITERIA {
        let start = Instant::now();
        let outcome = run_criterion(id, &opts);
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "[{status}] criterion {id:>2}: {name} ({} checks, {:.2?})",
            outcome.checks,
            start.elapsed()
        )
        .unwrap();
        for f in &outcome.failures {
            writeln!(out, "        {f}").unwrap();
        }
        if !outcome.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn mutated_delta_is_detected() {
    let opts = AcceptanceOptions { mutate_delta: true, ..AcceptanceOptions::from_env() };
    let outcome = run_criterion(3, &opts);
    assert!(!outcome.passed);
}
