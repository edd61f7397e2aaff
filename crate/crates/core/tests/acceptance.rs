//! Acceptance gate: one PASS/FAIL line per criterion, including the
//! 132 × 132 determinant.

use std::process::ExitCode;

use tl_core::verify::{run_criterion, VerifyOptions, CRITERIA};

fn main() -> ExitCode {
    let opts = VerifyOptions { nmax: 10, long: true };
    let mut failed = 0;
    for id in 1..=CRITERIA.len() {
        let r = run_criterion(id, &opts);
        println!(
            "{} {:>2} {:<28} {:>8} ms  {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.millis,
            r.detail
        );
        failed += usize::from(!r.passed);
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
