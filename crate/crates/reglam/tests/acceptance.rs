//! The acceptance gate: runs every verification battery and prints one
//! verdict line per check. Exits nonzero if any battery fails.

use std::time::Instant;

use reglam::verify::{all_checks, VerifyOptions};

fn main() {
    let opts = VerifyOptions::default();
    let start = Instant::now();
    let checks = all_checks(&opts);
    let failed = checks.iter().filter(|c| !c.passed).count();
    for check in &checks {
        let tag = if check.passed { "PASS" } else { "FAIL" };
        println!("{tag} {}: {}", check.name, check.detail);
    }
    println!(
        "{} of {} checks passed in {:.1}s",
        checks.len() - failed,
        checks.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
