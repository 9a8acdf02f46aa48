//! Trimmed grids meet the squaregraph edge bound exactly.

use std::error::Error;

use pennylab::faces::grid_edge_bound;
use pennylab::squaregraph::{squaregraph_bounds, tight_squaregraph};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for n in [5, 8, 9, 14, 30] {
        let sq = tight_squaregraph(n)?;
        let r = squaregraph_bounds(&sq);
        let s = r.squaregraph.as_ref().unwrap();
        println!(
            "n = {n:>2}: e = {:>2} = ⌊2n − 2√n⌋ = {:>2}, interior {:?}, (c, ℓ) = ({}, {}) ≤ Turán {}",
            r.e,
            grid_edge_bound(n),
            sq.interior_vertices(),
            s.arrangement.crossings,
            s.arrangement.lines,
            s.arrangement.turan_limit
        );
        assert!(s.grid_bound.tight && s.arrangement.pass);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
