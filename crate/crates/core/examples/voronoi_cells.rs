//! Voronoi cell areas: the hexagonal flower's center is the extreme case.

use std::error::Error;

use pennylab::generators::{gen_grid, gen_hex_packing};
use pennylab::geometry::{voronoi_cells, HEXAGON_AREA};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (name, config) in [("flower", gen_hex_packing(1)?), ("4×4 grid", gen_grid(4)?)] {
        let cells = voronoi_cells(&config);
        let bounded: Vec<_> = cells.iter().filter(|c| c.bounded).collect();
        let min = bounded.iter().filter_map(|c| c.area).fold(f64::INFINITY, f64::min);
        println!("{name}: {} bounded cells of {}, smallest area {min:.12} (2√3 = {HEXAGON_AREA:.12})", bounded.len(), cells.len());
        assert!(min >= HEXAGON_AREA - 1e-9);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
