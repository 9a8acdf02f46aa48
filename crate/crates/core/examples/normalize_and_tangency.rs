//! Scale a point set to minimum distance 2 and build its contact graph.

use std::error::Error;

use pennylab::geometry::{normalize, tangency_graph, Point, PointSet, DEFAULT_EPSILON};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // a unit-spaced 2×3 block; scaling doubles every coordinate
    let raw: PointSet = [(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, 1.0)]
        .into_iter()
        .map(Point::from)
        .collect();
    let config = normalize(&raw, DEFAULT_EPSILON)?;
    let g = tangency_graph(&config)?;
    println!("n = {}, e = {}, exact = {}", g.n(), g.edge_count(), config.is_exact());
    for v in 0..g.n() {
        println!("  {v}: ccw neighbors {:?}", g.rotation().unwrap().order(v));
    }
    assert_eq!(g.edge_count(), 7);
    assert!(config.is_exact());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
