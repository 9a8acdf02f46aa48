//! Faces of an embedded graph and the edge-count bounds built on them.
//!
//! Faces are traced from the rotation system: arriving at `v` along the
//! dart `u → v`, the walk leaves along the neighbor that follows `u`
//! clockwise around `v`. With counterclockwise rotations this traces bounded
//! faces counterclockwise and the outer face clockwise, so with coordinates
//! the outer face is the walk of most negative signed area.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Point;
use crate::graph::PennyGraph;

/// Default additive slack in the outer-face size threshold.
pub const DEFAULT_ISOPERIMETRIC_CONSTANT: f64 = 12.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FaceError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no rotation system")]
    MissingRotation,
    #[error("dart ({0}, {1}) is not an edge")]
    NoSuchDart(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceStructure {
    /// Each face as the sequence of dart tails; the walk closes back on its
    /// first vertex.
    faces: Vec<Vec<usize>>,
    outer: usize,
    /// Shoelace area per face, when positions are available.
    signed_areas: Option<Vec<f64>>,
}

impl FaceStructure {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    /// Edge-face incidences of face `i` (equal to its vertex-face incidences).
    pub fn length(&self, i: usize) -> usize {
        self.faces[i].len()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn outer(&self) -> usize {
        self.outer
    }

    pub fn outer_face(&self) -> &[usize] {
        &self.faces[self.outer]
    }

    pub fn signed_areas(&self) -> Option<&[f64]> {
        self.signed_areas.as_deref()
    }

    pub fn bounded_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(move |&i| i != self.outer)
    }

    /// Marks the vertices that appear on the outer face walk.
    pub fn on_outer_face(&self, n: usize) -> Vec<bool> {
        let mut on = vec![false; n];
        for &v in self.outer_face() {
            on[v] = true;
        }
        if self.outer_face().is_empty() {
            // a lone vertex lies on its only face
            on.iter_mut().for_each(|x| *x = true);
        }
        on
    }
}

/// Traces every face. The outer face is chosen geometrically when positions
/// are present and as the longest face (lowest index on ties) otherwise.
pub fn extract_faces(g: &PennyGraph) -> Result<FaceStructure, FaceError> {
    let (faces, signed_areas) = trace(g)?;
    let outer = match &signed_areas {
        Some(areas) => (0..faces.len())
            .min_by(|&a, &b| areas[a].total_cmp(&areas[b]).then(a.cmp(&b)))
            .unwrap_or(0),
        None => (0..faces.len())
            .max_by(|&a, &b| faces[a].len().cmp(&faces[b].len()).then(b.cmp(&a)))
            .unwrap_or(0),
    };
    Ok(FaceStructure { faces, outer, signed_areas })
}

/// Traces every face and declares the face containing dart `u → v` outer.
pub fn extract_faces_with_outer(g: &PennyGraph, dart: (usize, usize)) -> Result<FaceStructure, FaceError> {
    let (faces, signed_areas) = trace(g)?;
    let (u, v) = dart;
    let outer = faces
        .iter()
        .position(|f| (0..f.len()).any(|i| f[i] == u && f[(i + 1) % f.len()] == v))
        .ok_or(FaceError::NoSuchDart(u, v))?;
    Ok(FaceStructure { faces, outer, signed_areas })
}

type Traced = (Vec<Vec<usize>>, Option<Vec<f64>>);

fn trace(g: &PennyGraph) -> Result<Traced, FaceError> {
    let rot = g.rotation().ok_or(FaceError::MissingRotation)?;
    if !g.is_connected() {
        return Err(FaceError::Disconnected);
    }
    let n = g.n();
    if g.edge_count() == 0 {
        return Ok((vec![Vec::new()], g.positions().map(|_| vec![0.0])));
    }
    // darts of v occupy offset[v]..offset[v + 1], in rotation order
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + rot.order(v).len();
    }
    let mut slot: HashMap<(usize, usize), usize> = HashMap::with_capacity(offset[n]);
    for v in 0..n {
        for (i, &w) in rot.order(v).iter().enumerate() {
            slot.insert((v, w), i);
        }
    }
    let mut used = vec![false; offset[n]];
    let mut faces = Vec::new();
    for v in 0..n {
        for i in 0..rot.order(v).len() {
            if used[offset[v] + i] {
                continue;
            }
            let mut walk = Vec::new();
            let (mut a, mut ia) = (v, i);
            while !used[offset[a] + ia] {
                used[offset[a] + ia] = true;
                walk.push(a);
                let b = rot.order(a)[ia];
                let back = slot[&(b, a)];
                let deg = rot.order(b).len();
                let ib = (back + deg - 1) % deg;
                a = b;
                ia = ib;
            }
            faces.push(walk);
        }
    }
    let areas = g.positions().map(|pos| faces.iter().map(|f| walk_area(pos, f)).collect());
    Ok((faces, areas))
}

fn walk_area(pos: &[Point], walk: &[usize]) -> f64 {
    let mut twice = 0.0;
    for i in 0..walk.len() {
        let a = pos[walk[i]];
        let b = pos[walk[(i + 1) % walk.len()]];
        twice += a.x * b.y - a.y * b.x;
    }
    0.5 * twice
}

/// Vertex-face incidences on the outer face; a vertex met t times on the
/// walk counts t times.
pub fn outer_incidences(fs: &FaceStructure) -> usize {
    fs.length(fs.outer())
}

/// ⌈√x⌉ in exact integer arithmetic.
pub fn ceil_sqrt(x: u64) -> u64 {
    let r = x.isqrt();
    if r * r == x {
        r
    } else {
        r + 1
    }
}

/// ⌊3n − √(12n − 3)⌋, the maximum edge count of any n-penny graph.
pub fn penny_edge_bound(n: usize) -> i64 {
    if n == 0 {
        return 0;
    }
    let n = n as u64;
    (3 * n) as i64 - ceil_sqrt(12 * n - 3) as i64
}

/// ⌊2n − 2√n⌋, attained by square grids.
pub fn grid_edge_bound(n: usize) -> i64 {
    let n = n as u64;
    (2 * n) as i64 - ceil_sqrt(4 * n) as i64
}

/// √(π · 2√3 · n), the leading term of the outer-face size bound.
pub fn isoperimetric_leading_term(n: usize) -> f64 {
    (std::f64::consts::PI * 2.0 * 3f64.sqrt() * n as f64).sqrt()
}

/// An upper bound on the edge count and whether it held.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeBound {
    pub bound: f64,
    pub edges: usize,
    pub pass: bool,
    pub margin: f64,
    pub tight: bool,
}

impl EdgeBound {
    /// `twice_bound` is twice the bound, so half-integral bounds stay exact.
    fn from_twice(twice_bound: i64, edges: usize) -> Self {
        let twice_e = 2 * edges as i64;
        Self {
            bound: twice_bound as f64 / 2.0,
            edges,
            pass: twice_e <= twice_bound,
            margin: (twice_bound - twice_e) as f64 / 2.0,
            tight: twice_e == twice_bound,
        }
    }
}

/// The outer-face size threshold √(π·2√3·n) − C.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceThreshold {
    pub constant: f64,
    pub threshold: f64,
    pub k: usize,
    pub pass: bool,
    pub margin: f64,
}

/// Counting identities of a squaregraph viewed as dual to a line
/// arrangement with `lines` lines and `crossings` crossings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementCounts {
    pub crossings: i64,
    pub lines: i64,
    /// ⌊ℓ/2⌋·⌈ℓ/2⌉.
    pub turan_limit: i64,
    pub pass: bool,
}

/// Squaregraph-only entries of a bounds report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SquaregraphBounds {
    pub grid_bound: EdgeBound,
    pub has_cycle: bool,
    pub non_articulation_degree_two: usize,
    pub degree_two_pass: bool,
    pub arrangement: ArrangementCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    pub e: usize,
    pub diameter: Option<usize>,
    /// Vertex-face incidences on the outer face.
    pub k: usize,
    pub face_count: usize,
    pub triangle_free: bool,
    /// e ≤ 2n − k/2 − 2 (triangle-free only).
    pub big_face: Option<EdgeBound>,
    /// e ≤ 2n − D − 2 (triangle-free, connected).
    pub diameter_edges: Option<EdgeBound>,
    /// e ≤ ⌊3n − √(12n−3)⌋.
    pub penny: EdgeBound,
    pub isoperimetric: FaceThreshold,
    /// 2n − ½(√(π·2√3·n) − C) − 2: what the two previous facts give
    /// together when the threshold holds (triangle-free only).
    pub isoperimetric_edge_bound: Option<f64>,
    /// ⌊2n − 2√n⌋, reported for comparison with the grid family.
    pub grid_family_edges: i64,
    pub squaregraph: Option<SquaregraphBounds>,
}

impl BoundsReport {
    /// Every applicable edge bound holds (the face threshold is reported
    /// separately).
    pub fn edge_bounds_pass(&self) -> bool {
        self.penny.pass
            && self.big_face.as_ref().is_none_or(|b| b.pass)
            && self.diameter_edges.as_ref().is_none_or(|b| b.pass)
    }
}

/// Evaluates the edge bounds for an embedded connected graph.
///
/// The 2n-form bounds apply only to triangle-free graphs and are `None`
/// otherwise; the diameter bound also needs `diameter`.
pub fn check_edge_bounds(
    g: &PennyGraph,
    fs: &FaceStructure,
    diameter: Option<usize>,
    triangle_free: bool,
    isoperimetric_constant: f64,
) -> BoundsReport {
    let n = g.n();
    let e = g.edge_count();
    let k = outer_incidences(fs);
    let ni = n as i64;
    let big_face = triangle_free.then(|| EdgeBound::from_twice(4 * ni - k as i64 - 4, e));
    let diameter_edges = match (triangle_free, diameter) {
        (true, Some(d)) => Some(EdgeBound::from_twice(2 * (2 * ni - d as i64 - 2), e)),
        _ => None,
    };
    let penny = EdgeBound::from_twice(2 * penny_edge_bound(n), e);
    let threshold = isoperimetric_leading_term(n) - isoperimetric_constant;
    let isoperimetric = FaceThreshold {
        constant: isoperimetric_constant,
        threshold,
        k,
        pass: k as f64 >= threshold,
        margin: k as f64 - threshold,
    };
    let isoperimetric_edge_bound = triangle_free
        .then(|| 2.0 * n as f64 - 0.5 * (isoperimetric_leading_term(n) - isoperimetric_constant) - 2.0);
    BoundsReport {
        n,
        e,
        diameter,
        k,
        face_count: fs.face_count(),
        triangle_free,
        big_face,
        diameter_edges,
        penny,
        isoperimetric,
        isoperimetric_edge_bound,
        grid_family_edges: grid_edge_bound(n),
        squaregraph: None,
    }
}

pub(crate) fn arrangement_counts(n: usize, e: usize) -> ArrangementCounts {
    let (n, e) = (n as i64, e as i64);
    let crossings = e - n + 1;
    let lines = 2 * n - e - 2;
    let turan_limit = if lines >= 0 { (lines / 2) * ((lines + 1) / 2) } else { 0 };
    ArrangementCounts {
        crossings,
        lines,
        turan_limit,
        pass: crossings >= 0 && lines >= 0 && crossings <= turan_limit,
    }
}

pub(crate) fn edge_bound(bound: i64, edges: usize) -> EdgeBound {
    EdgeBound::from_twice(2 * bound, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::RotationSystem;

    fn square() -> PennyGraph {
        PennyGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])
            .unwrap()
            .with_rotation(RotationSystem::combinatorial(vec![
                vec![1, 3],
                vec![2, 0],
                vec![3, 1],
                vec![0, 2],
            ]))
            .unwrap()
            .with_positions(vec![
                Point::new(0.0, 0.0),
                Point::new(2.0, 0.0),
                Point::new(2.0, 2.0),
                Point::new(0.0, 2.0),
            ])
            .unwrap()
    }

    fn path3() -> PennyGraph {
        PennyGraph::from_edges(3, &[(0, 1), (1, 2)])
            .unwrap()
            .with_rotation(RotationSystem::combinatorial(vec![vec![1], vec![2, 0], vec![1]]))
            .unwrap()
    }

    #[test]
    fn square_has_two_faces() {
        let fs = extract_faces(&square()).unwrap();
        assert_eq!(fs.face_count(), 2);
        assert_eq!(fs.lengths(), vec![4, 4]);
        let areas = fs.signed_areas().unwrap();
        assert_eq!(areas[fs.outer()], -4.0);
        assert_eq!(outer_incidences(&fs), 4);
        // outer walk is clockwise
        assert_eq!(fs.outer_face(), &[0, 3, 2, 1]);
    }

    #[test]
    fn path_has_one_face_with_four_incidences() {
        let fs = extract_faces(&path3()).unwrap();
        assert_eq!(fs.face_count(), 1);
        let mut walk = fs.outer_face().to_vec();
        assert_eq!(walk.len(), 4);
        walk.sort_unstable();
        assert_eq!(walk, vec![0, 1, 1, 2]);
    }

    #[test]
    fn errors() {
        let no_rot = PennyGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(extract_faces(&no_rot), Err(FaceError::MissingRotation));
        let split = PennyGraph::from_edges(2, &[])
            .unwrap()
            .with_rotation(RotationSystem::combinatorial(vec![vec![], vec![]]))
            .unwrap();
        assert_eq!(extract_faces(&split), Err(FaceError::Disconnected));
        assert_eq!(
            extract_faces_with_outer(&square(), (0, 2)),
            Err(FaceError::NoSuchDart(0, 2))
        );
    }

    #[test]
    fn explicit_outer_dart() {
        let fs = extract_faces_with_outer(&square(), (0, 1)).unwrap();
        assert_eq!(fs.outer_face(), &[0, 1, 2, 3]);
    }

    #[test]
    fn integer_bounds() {
        assert_eq!(penny_edge_bound(7), 12);
        assert_eq!(penny_edge_bound(19), 42);
        assert_eq!(penny_edge_bound(3), 3);
        assert_eq!(grid_edge_bound(9), 12);
        assert_eq!(grid_edge_bound(6), 7);
        assert_eq!(grid_edge_bound(8), 10);
        assert_eq!(grid_edge_bound(5), 5);
        assert_eq!(grid_edge_bound(1), 0);
        for x in 0..2000u64 {
            let c = ceil_sqrt(x);
            assert!(c * c >= x && (c == 0 || (c - 1) * (c - 1) < x));
        }
    }

    #[test]
    fn half_integral_bound_is_exact() {
        // n = 3, k = 3 gives 2n − k/2 − 2 = 2.5
        let b = EdgeBound::from_twice(4 * 3 - 3 - 4, 3);
        assert_eq!(b.bound, 2.5);
        assert!(!b.pass);
        let b = EdgeBound::from_twice(5, 2);
        assert!(b.pass && !b.tight);
        assert_eq!(b.margin, 0.5);
    }

    #[test]
    fn arrangement_inversion() {
        let a = arrangement_counts(9, 12);
        assert_eq!((a.crossings, a.lines, a.turan_limit), (4, 4, 4));
        assert!(a.pass);
        let a = arrangement_counts(1, 0);
        assert_eq!((a.crossings, a.lines), (0, 0));
        assert!(a.pass);
    }
}
