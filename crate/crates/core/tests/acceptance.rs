//! The full verification suite at its largest sizes, one line per check.
//! Runs without the test harness so the lines always print.

use std::process::ExitCode;

use dctp_core::verify::{run, Status, VerifyConfig, DEFAULT_SEED};

/// Checks whose statement is false as written. The report still prints
/// FAIL for them; this only pins the counterexample.
const KNOWN_FAILURES: &[(usize, &str)] = &[(12, "omega=[2, 1]")];

fn main() -> ExitCode {
    let report = run(&VerifyConfig { n_max: 7, seed: DEFAULT_SEED });
    let mut ok = true;
    for c in &report.checks {
        println!("{}", c.line());
        let expected = match KNOWN_FAILURES.iter().find(|(id, _)| *id == c.id) {
            Some((_, needle)) => c.status == Status::Fail && c.counterexample.as_deref().unwrap_or("").contains(needle),
            None => c.status == Status::Pass,
        };
        if !expected {
            println!("    unexpected status for check {}", c.id);
            ok = false;
        }
    }
    let failed = report.checks.iter().filter(|c| c.status == Status::Fail).count();
    println!("acceptance: {} pass, {failed} fail ({} known)", report.checks.len() - failed, KNOWN_FAILURES.len());
    if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
