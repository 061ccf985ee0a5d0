//! Runs the whole check registry and prints one line per check.
//!
//! `cargo run --release --example verify_harness [seed]`

use std::time::Instant;

use digitop::verifier::{render_text, run_all, DEFAULT_CHECK_BUDGET};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let start = Instant::now();
    let reports = run_all(DEFAULT_CHECK_BUDGET, seed);
    print!("{}", render_text(&reports));
    let failed = reports.iter().filter(|r| r.outcome != digitop::verifier::Outcome::Pass).count();
    eprintln!("{} checks, {failed} not passing, {:.1}s", reports.len(), start.elapsed().as_secs_f64());
}
