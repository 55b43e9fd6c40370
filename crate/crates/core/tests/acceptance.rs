//! One line per criterion over the named fixtures and a seeded corpus.

mod common;

use std::time::Instant;

use etale_core::ledger::{values, FROZEN};
use etale_core::suite::{run, CRITERIA};

const SEED: u64 = 2026;
const INSTANCES: usize = 200;

#[test]
fn acceptance() {
    let start = Instant::now();
    let mut report = run(SEED, INSTANCES, None);

    // Criterion 10 also compares the library against the test-side oracles.
    let oracle = common::oracle::values();
    let c10 = &mut report.criteria[9];
    for ((key, got), (_, want)) in values().into_iter().zip(FROZEN) {
        c10.checks += 1;
        match oracle.get(key) {
            Some(o) if o == want && got == *want => {}
            o => c10.failures.push(format!("{key}: library {got:?}, oracle {o:?}, frozen {want:?}")),
        }
    }

    let elapsed = start.elapsed();
    for c in &report.criteria {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        println!(
            "[{status}] {:>2}. {} ({} checks, {} failures, {} skipped over size cap)",
            c.id,
            c.name,
            c.checks,
            c.failures.len(),
            c.skipped
        );
        for f in c.failures.iter().take(5) {
            println!("       {f}");
        }
    }
    println!("{} instances, seed {SEED}, {:.1}s", report.instances, elapsed.as_secs_f64());
    assert_eq!(report.criteria.len(), CRITERIA.len());
    assert!(report.instances >= 200);
    assert!(report.passed(), "acceptance criteria failed");
    assert!(elapsed.as_secs() < 60, "suite exceeded the time budget");
}
