//! Runs the twelve acceptance criteria, one line each, and exits non-zero
//! if any fails.

use std::process::ExitCode;
use std::time::Instant;

use vexlp::suite::{run_all, SUITE_BUDGET_SECONDS};

fn main() -> ExitCode {
    let start = Instant::now();
    let outcomes = run_all();
    for o in &outcomes {
        println!("{}", o);
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    println!(
        "acceptance: {}/{} passed in {:.1} s (budget {:.0} s)",
        outcomes.len() - failed.len(),
        outcomes.len(),
        start.elapsed().as_secs_f64(),
        SUITE_BUDGET_SECONDS
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {:?}", failed);
        ExitCode::FAILURE
    }
}
