//! Trace faces and compare the edge count with every bound.

use std::error::Error;

use pennylab::faces::{check_edge_bounds, extract_faces, DEFAULT_ISOPERIMETRIC_CONSTANT};
use pennylab::generators::gen_grid;
use pennylab::geometry::tangency_graph;
use pennylab::graph::{diameter, find_triangle};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let g = tangency_graph(&gen_grid(5)?)?;
    let faces = extract_faces(&g)?;
    let d = diameter(&g)?;
    let r = check_edge_bounds(&g, &faces, Some(d), find_triangle(&g).is_none(), DEFAULT_ISOPERIMETRIC_CONSTANT);
    println!("n = {}, e = {}, faces = {}, k = {}, D = {}", r.n, r.e, r.face_count, r.k, d);
    let big = r.big_face.as_ref().unwrap();
    let diam = r.diameter_edges.as_ref().unwrap();
    println!("  2n − k/2 − 2 = {} (tight: {})", big.bound, big.tight);
    println!("  2n − D − 2   = {} (tight: {})", diam.bound, diam.tight);
    println!("  ⌊3n − √(12n−3)⌋ = {}", r.penny.bound);
    println!("  ⌊2n − 2√n⌋ = {}", r.grid_family_edges);
    println!("  outer face threshold {:.3}, margin {:.3}", r.isoperimetric.threshold, r.isoperimetric.margin);
    assert!(r.edge_bounds_pass() && big.tight && diam.tight);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
