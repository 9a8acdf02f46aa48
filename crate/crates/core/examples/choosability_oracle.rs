//! Exhaustive choosability: C5 needs three colors per list.

use std::error::Error;

use pennylab::coloring::{choosability_oracle, list_color};
use pennylab::generators::gen_cycle;
use pennylab::geometry::tangency_graph;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let c5 = tangency_graph(&gen_cycle(5)?)?;
    let two = choosability_oracle(&c5, 2)?;
    let three = choosability_oracle(&c5, 3)?;
    println!("C5 2-choosable: {}, 3-choosable: {}", two.choosable, three.choosable);
    let lists = two.witness.clone().expect("a bad 2-list assignment");
    println!("witness lists: {:?}", lists.lists());
    println!("list_color on the witness: {}", list_color(&c5, &lists).unwrap_err());
    assert!(!two.choosable && three.choosable);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
