//! Runs every acceptance criterion and prints one line each.
use std::time::Instant;

use symsemi::cliffordlab::Mode;
use symsemi::suite::{run_criterion, CRITERIA};

fn main() {
    let mode = std::env::var("SYMSEMI_MODE")
        .ok()
        .and_then(|m| m.parse().ok())
        .unwrap_or(Mode::Exact);
    for (id, _) in CRITERIA {
        let start = Instant::now();
        let r = run_criterion(id, mode);
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!(
            "{status} [{:>2}] {} ({:.2}s): {}",
            r.id,
            r.title,
            start.elapsed().as_secs_f64(),
            r.detail
        );
    }
}
