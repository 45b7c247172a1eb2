//! One line per acceptance criterion.
//!
//! A criterion passes when all of its counted checks hold and none of its
//! blocking errata fail. Criteria 2 and 4 quote formulas whose printed form
//! is wrong; they are expected to fail for exactly that reason, with every
//! corrected check passing. The process exits nonzero if the set of failing
//! criteria differs from that expectation in either direction.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use olc_core::suites::{run, Outcome, Suite, SuiteConfig};

const KNOWN_ERRATA: [(usize, &str); 2] = [
    (2, "printed birth-death boundary value drops the factor (1 - λ_j)"),
    (4, "printed single sum for B^(1) and printed connection coefficients (they rebuild (x)_n)"),
];

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let mut failing = BTreeSet::new();
    for criterion in 1..=8 {
        let start = Instant::now();
        let mut outcome = Outcome::default();
        for s in Suite::ALL.iter().filter(|s| s.criterion() == criterion) {
            outcome.merge(run(*s, &cfg));
        }
        let secs = start.elapsed().as_secs_f64();
        let counted = outcome.reports.len();
        let errata = outcome.errata.len();
        if outcome.criterion_holds() {
            println!("criterion {criterion}: PASS ({counted} checks, {errata} errata, {secs:.1}s)");
            continue;
        }
        failing.insert(criterion);
        let counted_failures = outcome.failures().count();
        let blocking = outcome.blocking_failures().count();
        let note = KNOWN_ERRATA
            .iter()
            .find(|(c, _)| *c == criterion)
            .map(|(_, n)| format!("; known erratum: {n}"))
            .unwrap_or_default();
        println!(
            "criterion {criterion}: FAIL ({counted_failures}/{counted} counted checks fail, \
             {blocking}/{errata} printed-form checks fail, {} errors{note}, {secs:.1}s)",
            outcome.errors.len()
        );
        for r in outcome.failures().chain(outcome.blocking_failures()).take(3) {
            println!("    {}: {} vs {}", r.label, r.lhs, r.rhs);
        }
        for e in outcome.errors.iter().take(3) {
            println!("    error: {e}");
        }
        if outcome.passed() && blocking > 0 {
            println!("    every counted check, including the corrected forms, holds");
        }
    }
    let expected: BTreeSet<usize> = KNOWN_ERRATA.iter().map(|(c, _)| *c).collect();
    if failing == expected {
        println!("failing criteria match the recorded errata");
        ExitCode::SUCCESS
    } else {
        println!("failing criteria {failing:?}, recorded errata {expected:?}");
        ExitCode::FAILURE
    }
}
