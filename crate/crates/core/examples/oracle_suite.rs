//! Runs the seeded oracle suite and prints one line per check. Pass a seed
//! as the first argument to change the random instances.

use elliptic_media::verify::{run, VerifyOptions};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    let report = run(&VerifyOptions {
        seed,
        ..VerifyOptions::default()
    });
    for c in &report.checks {
        let status = if c.passed() { "ok  " } else { "FAIL" };
        println!(
            "{status} [{}] {:<32} {:>10} cases",
            c.criterion, c.name, c.cases
        );
    }
    println!("{} passed, {} failed", report.passed, report.failed);
}
