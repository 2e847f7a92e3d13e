//! One pass/fail line per acceptance criterion; fails if any line fails.

use modp_satake_core::verify::{run_all, DEFAULT_SEED};

#[test]
fn acceptance() {
    let reports = run_all(DEFAULT_SEED);
    for r in &reports {
        println!("{}  ({:.2?})", r.line(), r.elapsed);
    }
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
