//! Seeded instance corpus with ground-truth checks.

use std::error::Error;

use pennylab::generators::{random_corpus, InstanceSpec, PRNG_NAME};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    println!("PRNG: {PRNG_NAME}");
    let mut specs = vec![InstanceSpec::grid(7), InstanceSpec::hex_packing(3), InstanceSpec::cycle(11)];
    specs.extend(random_corpus(5, 1));
    for spec in &specs {
        let config = spec.build()?;
        let mismatches = spec.check(&config)?;
        println!("{:<60} n = {:>4}  ground truth ok: {}", spec.label(), config.len(), mismatches.is_empty());
        assert!(mismatches.is_empty());
    }
    println!("{}", serde_json::to_string(&specs[0])?);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
