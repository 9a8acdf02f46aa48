//! Color a random triangle-free penny graph from random 3-color lists.

use std::error::Error;

use pennylab::coloring::{list_color, verify_coloring};
use pennylab::generators::{gen_random_subgrid, random_lists};
use pennylab::geometry::tangency_graph;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let g = tangency_graph(&gen_random_subgrid(20, 0.75, 2024)?)?;
    let lists = random_lists(g.n(), 3, 6, 99)?;
    let result = list_color(&g, &lists)?;
    verify_coloring(&g, &lists, &result.colors)?;
    println!(
        "n = {}, e = {}, ops = {} ({:.2} per vertex or edge), max colored neighbors = {}",
        g.n(),
        g.edge_count(),
        result.ops,
        result.ops as f64 / (g.n() + g.edge_count()) as f64,
        result.max_colored_neighbors
    );
    for v in 0..5.min(g.n()) {
        println!("  vertex {v}: list {:?} -> color {}", lists.list(v), result.colors[v]);
    }
    assert!(result.max_colored_neighbors <= 2);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
