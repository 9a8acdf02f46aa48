//! Full verification report for one instance, as JSON.

use std::error::Error;

use pennylab::generators::InstanceSpec;
use pennylab::report::{verify_configuration, Source, Status, VerifyOptions};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let spec = InstanceSpec::random_subgrid(15, 0.8, 5);
    let config = spec.build()?;
    let report = verify_configuration(&config, Source::Instance { instance: spec }, &VerifyOptions::default())?;
    for c in &report.checks {
        let margin = c.margin.map_or(String::new(), |m| format!("margin {m:.3}"));
        println!("{:<18} {:<8} {}", c.id, format!("{:?}", c.status), margin);
    }
    println!("{} bytes of JSON", serde_json::to_string_pretty(&report)?.len());
    assert!(report.passed());
    assert!(report.checks.iter().all(|c| c.status != Status::Fail));
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
