//! Acceptance gate: runs the twelve criteria and prints one line each.
//!
//! Exits nonzero when a criterion fails or runs past its time budget.

use std::time::{Duration, Instant};

use strandcat::cli::suite::{BUDGET_SECS, CRITERIA, GLUE_BUDGET_SECS};

const SEED: u64 = 1;

fn main() {
    let mut failed = 0;
    for (id, run) in CRITERIA {
        let t = Instant::now();
        let c = run(SEED);
        let took = t.elapsed();
        let budget = Duration::from_secs(if id == 9 { GLUE_BUDGET_SECS } else { BUDGET_SECS });
        let in_time = took <= budget;
        if !c.pass() || !in_time {
            failed += 1;
        }
        let late = if in_time { String::new() } else { format!("\tover budget ({}s)", budget.as_secs()) };
        println!("{}\t{:.2}s{late}", c.line(), took.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
