//! Squaregraphs: plane graphs whose bounded faces are all quadrilaterals and
//! whose interior vertices have degree at least four.
//!
//! Everything here is combinatorial. The embedding comes from the rotation
//! system; positions, when present, only pick the outer face.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::faces::{
    arrangement_counts, check_edge_bounds, edge_bound, extract_faces, grid_edge_bound, BoundsReport, FaceError,
    FaceStructure, SquaregraphBounds, DEFAULT_ISOPERIMETRIC_CONSTANT,
};
use crate::generators::{gen_rect_grid, trim_degree_two};
use crate::geometry::tangency_graph;
use crate::graph::{diameter, find_triangle, low_degree_census, PennyGraph};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SquaregraphError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no rotation system")]
    MissingRotation,
    #[error("not a squaregraph: {0:?}")]
    NotSquaregraph(Vec<SquaregraphViolation>),
    #[error("n must be at least 1")]
    EmptyRequest,
}

impl From<FaceError> for SquaregraphError {
    fn from(e: FaceError) -> Self {
        match e {
            FaceError::Disconnected => Self::Disconnected,
            FaceError::MissingRotation | FaceError::NoSuchDart(..) => Self::MissingRotation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SquaregraphViolation {
    /// A bounded face whose boundary walk is not a 4-cycle.
    NonQuadrilateralFace { face: Vec<usize>, length: usize },
    /// A vertex off the outer face with degree below four.
    LowDegreeInterior { vertex: usize, degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquaregraphValidation {
    pub valid: bool,
    pub violations: Vec<SquaregraphViolation>,
}

/// Checks both defining conditions against the faces of `g`.
pub fn validate_squaregraph(g: &PennyGraph) -> Result<SquaregraphValidation, SquaregraphError> {
    let fs = extract_faces(g)?;
    Ok(validate_with_faces(g, &fs))
}

fn validate_with_faces(g: &PennyGraph, fs: &FaceStructure) -> SquaregraphValidation {
    let mut violations = Vec::new();
    for i in fs.bounded_faces() {
        let face = fs.face(i);
        let mut distinct = face.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if face.len() != 4 || distinct.len() != 4 {
            violations.push(SquaregraphViolation::NonQuadrilateralFace {
                face: face.to_vec(),
                length: face.len(),
            });
        }
    }
    let outer = fs.on_outer_face(g.n());
    for v in 0..g.n() {
        if !outer[v] && g.degree(v) < 4 {
            violations.push(SquaregraphViolation::LowDegreeInterior { vertex: v, degree: g.degree(v) });
        }
    }
    SquaregraphValidation { valid: violations.is_empty(), violations }
}

/// A validated squaregraph together with its faces.
#[derive(Debug, Clone, PartialEq)]
pub struct Squaregraph {
    graph: PennyGraph,
    faces: FaceStructure,
}

impl Squaregraph {
    pub fn new(graph: PennyGraph) -> Result<Self, SquaregraphError> {
        let faces = extract_faces(&graph)?;
        Self::with_faces(graph, faces)
    }

    /// Uses a face structure whose outer face was chosen by the caller.
    pub fn with_faces(graph: PennyGraph, faces: FaceStructure) -> Result<Self, SquaregraphError> {
        let check = validate_with_faces(&graph, &faces);
        if !check.valid {
            return Err(SquaregraphError::NotSquaregraph(check.violations));
        }
        Ok(Self { graph, faces })
    }

    pub fn graph(&self) -> &PennyGraph {
        &self.graph
    }

    pub fn faces(&self) -> &FaceStructure {
        &self.faces
    }

    /// Vertices not on the outer face.
    pub fn interior_vertices(&self) -> Vec<usize> {
        let outer = self.faces.on_outer_face(self.graph.n());
        (0..self.graph.n()).filter(|&v| !outer[v]).collect()
    }
}

/// The general bounds plus the squaregraph extension: ⌊2n − 2√n⌋, the
/// degree-2 census and the arrangement counts (c, ℓ).
pub fn squaregraph_bounds(sq: &Squaregraph) -> BoundsReport {
    let g = sq.graph();
    let d = diameter(g).expect("squaregraphs are connected");
    let triangle_free = find_triangle(g).is_none();
    let mut report = check_edge_bounds(g, sq.faces(), Some(d), triangle_free, DEFAULT_ISOPERIMETRIC_CONSTANT);
    let (has_cycle, low) = match low_degree_census(g) {
        Ok(c) => (c.has_cycle, c.non_articulation_low_degree.len()),
        Err(_) => (g.has_cycle(), 0),
    };
    report.squaregraph = Some(SquaregraphBounds {
        grid_bound: edge_bound(grid_edge_bound(g.n()), g.edge_count()),
        has_cycle,
        non_articulation_degree_two: low,
        degree_two_pass: !has_cycle || low >= 4,
        arrangement: arrangement_counts(g.n(), g.edge_count()),
    });
    report
}

/// Smallest grid with m×m or (m−1)×m vertices holding at least `n`, trimmed
/// down to `n` vertices by deleting degree-2 vertices. Each deletion takes
/// the lowest id that keeps the graph connected and a valid squaregraph.
pub fn tight_squaregraph(n: usize) -> Result<Squaregraph, SquaregraphError> {
    if n == 0 {
        return Err(SquaregraphError::EmptyRequest);
    }
    let m = ceil_isqrt(n);
    let (rows, cols) = if n > m * (m - 1) { (m, m) } else { (m - 1, m) };
    let config = gen_rect_grid(rows, cols).expect("positive dimensions");
    let grid = tangency_graph(&config).expect("grid configurations are valid");
    let accept = |h: &PennyGraph| validate_squaregraph(h).is_ok_and(|v| v.valid);
    let keep = trim_degree_two(&grid, rows * cols - n, accept)
        .expect("trimming a grid never dead-ends");
    let (sub, _) = grid.induced_subgraph(&keep);
    Squaregraph::new(sub)
}

fn ceil_isqrt(n: usize) -> usize {
    crate::faces::ceil_sqrt(n as u64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::RotationSystem;

    /// Combinatorial grid: ccw rotation east, north, west, south.
    fn grid(rows: usize, cols: usize) -> PennyGraph {
        let id = |r: usize, c: usize| r * cols + c;
        let mut edges = Vec::new();
        let mut order = vec![Vec::new(); rows * cols];
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    edges.push((id(r, c), id(r, c + 1)));
                }
                if r + 1 < rows {
                    edges.push((id(r, c), id(r + 1, c)));
                }
                let o = &mut order[id(r, c)];
                if c + 1 < cols {
                    o.push(id(r, c + 1));
                }
                if r + 1 < rows {
                    o.push(id(r + 1, c));
                }
                if c > 0 {
                    o.push(id(r, c - 1));
                }
                if r > 0 {
                    o.push(id(r - 1, c));
                }
            }
        }
        PennyGraph::from_edges(rows * cols, &edges)
            .unwrap()
            .with_rotation(RotationSystem::combinatorial(order))
            .unwrap()
    }

    fn cycle(len: usize) -> PennyGraph {
        let edges: Vec<_> = (0..len).map(|i| (i, (i + 1) % len)).collect();
        let order = (0..len).map(|i| vec![(i + 1) % len, (i + len - 1) % len]).collect();
        PennyGraph::from_edges(len, &edges)
            .unwrap()
            .with_rotation(RotationSystem::combinatorial(order))
            .unwrap()
    }

    #[test]
    fn grids_are_squaregraphs() {
        for m in 1..6 {
            assert!(validate_squaregraph(&grid(m, m)).unwrap().valid);
        }
        let sq = Squaregraph::new(grid(4, 4)).unwrap();
        assert_eq!(sq.interior_vertices(), vec![5, 6, 9, 10]);
    }

    #[test]
    fn hexagon_is_not() {
        let v = validate_squaregraph(&cycle(6)).unwrap();
        assert!(!v.valid);
        assert_eq!(v.violations.len(), 1);
        assert!(matches!(&v.violations[0], SquaregraphViolation::NonQuadrilateralFace { length: 6, .. }));
    }

    #[test]
    fn deleting_an_interior_edge_breaks_both_conditions() {
        let g = grid(4, 4);
        let keep: Vec<(usize, usize)> = g.edges().filter(|&e| e != (5, 6)).collect();
        let (h, _) = g.edge_subgraph(&keep);
        let v = validate_squaregraph(&h).unwrap();
        assert!(!v.valid);
        // oracle: the merged face has six sides; 5 and 6 drop to degree 3
        let lengths: Vec<usize> = v
            .violations
            .iter()
            .filter_map(|x| match x {
                SquaregraphViolation::NonQuadrilateralFace { length, .. } => Some(*length),
                _ => None,
            })
            .collect();
        assert_eq!(lengths, vec![6]);
        let low: Vec<usize> = v
            .violations
            .iter()
            .filter_map(|x| match x {
                SquaregraphViolation::LowDegreeInterior { vertex, degree } => {
                    assert_eq!(*degree, 3);
                    Some(*vertex)
                }
                _ => None,
            })
            .collect();
        assert_eq!(low, vec![5, 6]);
    }

    #[test]
    fn disconnected_input() {
        let g = PennyGraph::from_edges(2, &[])
            .unwrap()
            .with_rotation(RotationSystem::combinatorial(vec![vec![], vec![]]))
            .unwrap();
        assert_eq!(validate_squaregraph(&g), Err(SquaregraphError::Disconnected));
    }

    #[test]
    fn bounds_on_small_examples() {
        for (g, n, e) in [(grid(3, 3), 9, 12), (cycle(4), 4, 4), (grid(2, 3), 6, 7)] {
            let r = squaregraph_bounds(&Squaregraph::new(g).unwrap());
            assert_eq!((r.n, r.e), (n, e));
            let sb = r.squaregraph.unwrap();
            assert!(sb.grid_bound.tight);
            assert!(sb.degree_two_pass);
            assert!(sb.arrangement.pass);
            assert!(r.diameter_edges.unwrap().pass);
        }
    }

    #[test]
    fn arrangement_of_three_by_three() {
        let r = squaregraph_bounds(&Squaregraph::new(grid(3, 3)).unwrap());
        let a = r.squaregraph.unwrap().arrangement;
        // two horizontal and two vertical lines, four crossings
        assert_eq!((a.crossings, a.lines, a.turan_limit), (4, 4, 4));
    }

    #[test]
    fn tight_examples() {
        let nine = tight_squaregraph(9).unwrap();
        assert_eq!(nine.graph().edge_count(), 12);
        let eight = tight_squaregraph(8).unwrap();
        assert_eq!(eight.graph().edge_count(), 10);
        let five = tight_squaregraph(5).unwrap();
        assert_eq!(five.graph().edge_count(), 5);
        assert_eq!(tight_squaregraph(1).unwrap().graph().edge_count(), 0);
        assert!(tight_squaregraph(0).is_err());
    }

    #[test]
    fn tight_family_hits_the_bound() {
        for n in 1..=200 {
            let sq = tight_squaregraph(n).unwrap();
            let g = sq.graph();
            assert_eq!(g.n(), n);
            assert!(g.is_connected());
            assert_eq!(g.edge_count() as i64, grid_edge_bound(n), "n = {n}");
            // independent floor: largest e with e ≤ 2n − 2√n, by squaring
            let e = g.edge_count() as i64;
            let two_n = 2 * n as i64;
            assert!((two_n - e) * (two_n - e) >= 4 * n as i64);
            assert!((two_n - e - 1) * (two_n - e - 1) < 4 * n as i64);
        }
    }
}
