//! Acceptance suite. Runs without the test harness so the PASS/FAIL line of
//! every criterion always reaches the output.

use std::process::ExitCode;

use gandy_hyland::acceptance::{criterion_count, run_all};
use gandy_hyland::gh::SessionConfig;

fn main() -> ExitCode {
    let outcomes = run_all(&SessionConfig::default());
    assert_eq!(outcomes.len(), criterion_count());
    for outcome in &outcomes {
        println!("{outcome}");
    }
    let failed: Vec<u32> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id)
        .collect();
    if failed.is_empty() {
        println!(
            "acceptance: {} of {} criteria pass",
            outcomes.len(),
            outcomes.len()
        );
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
