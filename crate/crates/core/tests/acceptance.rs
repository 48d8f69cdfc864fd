//! Runs every acceptance criterion and prints one line per criterion.

use std::process::ExitCode;

use conflop::verify::run_all;

fn main() -> ExitCode {
    let results = run_all(0, true);
    let mut failed = 0;
    for r in &results {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] criterion {:>2}: {} ({} ms) - {}",
            r.id, r.title, r.millis, r.detail
        );
        if !r.passed {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
