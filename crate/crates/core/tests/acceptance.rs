//! Runs every acceptance criterion and prints one PASS/FAIL line each.
//! Runs without the libtest harness so the lines always reach the output.

use std::process::ExitCode;

use formal_legendre::verify::{criteria, run_criterion, VerifyConfig};

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut failed = 0;
    for (id, _, _) in criteria() {
        let r = run_criterion(id, &cfg).expect("listed criterion");
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} - {} ({}; {} ms)", r.id, r.title, r.detail, r.millis);
        if !r.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria().len() - failed, criteria().len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
