//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Tolerances: 1e-6 for real-valued identities, 1e-9 for closed forms
//! against quadrature; exact equality for every divisor-valued check.

use doublefield::verify::{run_all, VerifyConfig};

#[test]
fn acceptance() {
    let cfg = VerifyConfig { timing: true, ..VerifyConfig::default() };
    assert_eq!(cfg.tol, 1e-6);
    assert_eq!(cfg.quad_tol, 1e-9);
    let reports = run_all(&cfg);
    assert_eq!(reports.len(), 11);
    println!();
    for r in &reports {
        println!("{}", r.line());
        for f in &r.failures {
            println!("    failure: {f}");
        }
        for n in &r.notes {
            println!("    note: {n}");
        }
    }
    let failed: Vec<u32> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "criteria failing: {failed:?}");
}
