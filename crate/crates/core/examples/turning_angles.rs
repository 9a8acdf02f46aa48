//! Boundary rays of a triangle-free block and their turning angles.

use std::error::Error;

use pennylab::generators::gen_trimmed_grid;
use pennylab::geometry::{tangency_graph, turning_angles};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let g = tangency_graph(&gen_trimmed_grid(4, 5, 2)?)?;
    let t = turning_angles(&g)?;
    println!("boundary of {} vertices, angle sum {:.12}", t.cycle.len(), t.sum);
    for ((v, a), d) in t.cycle.iter().zip(&t.angles).zip(&t.degrees) {
        println!("  vertex {v:>2} degree {d}: {:>7.2}°", a.to_degrees());
    }
    println!("positive turns: {}", t.positive_count());
    assert!(t.violations(1e-9).is_empty());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
