//! Degeneracy orders and triangle detection on a grid and a hexagonal packing.

use std::error::Error;

use pennylab::generators::{gen_grid, gen_hex_packing};
use pennylab::geometry::tangency_graph;
use pennylab::graph::{degeneracy_order, find_triangle};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let grid = tangency_graph(&gen_grid(6)?)?;
    let hex = tangency_graph(&gen_hex_packing(2)?)?;
    for (name, g) in [("6×6 grid", &grid), ("hexagon, 2 rings", &hex)] {
        let order = degeneracy_order(g);
        println!(
            "{name}: degeneracy {}, triangle {:?}, first removals {:?}",
            order.degeneracy,
            find_triangle(g),
            &order.order[..4]
        );
    }
    assert_eq!(degeneracy_order(&grid).degeneracy, 2);
    assert_eq!(degeneracy_order(&hex).degeneracy, 3);
    assert!(find_triangle(&grid).is_none());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
