//! The small battery, summarized per criterion.

use std::error::Error;

use pennylab::suite::{run_suite, Scale, SuiteOptions};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let report = run_suite(&SuiteOptions::new(Scale::Small, 7));
    for c in &report.checks {
        println!("{:<18} {:?}", c.id, c.status);
    }
    println!("{:.0} ms", report.timing.total_ms);
    assert!(report.passed());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
