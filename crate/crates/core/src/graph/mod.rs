//! Combinatorial graphs with an optional planar embedding.
//!
//! [`PennyGraph`] is a simple undirected graph. When it is built from a
//! penny configuration it also carries a [`RotationSystem`] (neighbors in
//! counterclockwise order around each vertex) and the disk centers, which
//! together fix the plane embedding used by the face and turning-angle code.

mod blocks;
mod degeneracy;
mod distance;

pub use blocks::{
    biconnected_components, low_degree_census, BiconnectedDecomposition, BlockCensus,
    LowDegreeCensus,
};
pub use degeneracy::{degeneracy_order, find_triangle, DegeneracyOrder};
pub use distance::{bfs_distances, diameter, diameter_lower_bound, eccentricity};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Point;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) listed more than once")]
    DuplicateEdge(usize, usize),
    #[error("rotation at vertex {0} is not a permutation of its neighbors")]
    RotationMismatch(usize),
    #[error("expected {expected} positions, got {got}")]
    PositionCount { expected: usize, got: usize },
    #[error("triangle found on vertices {0:?}")]
    TriangleFound([usize; 3]),
    #[error("graph is disconnected")]
    Disconnected,
}

/// Cyclic counterclockwise order of the neighbors around each vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationSystem {
    order: Vec<Vec<usize>>,
    /// Direction of each neighbor in radians, parallel to `order`. Only
    /// present for geometric embeddings.
    angles: Option<Vec<Vec<f64>>>,
}

impl RotationSystem {
    pub fn combinatorial(order: Vec<Vec<usize>>) -> Self {
        Self { order, angles: None }
    }

    pub fn geometric(order: Vec<Vec<usize>>, angles: Vec<Vec<f64>>) -> Self {
        debug_assert_eq!(order.len(), angles.len());
        Self { order, angles: Some(angles) }
    }

    pub fn order(&self, v: usize) -> &[usize] {
        &self.order[v]
    }

    pub fn angles(&self, v: usize) -> Option<&[f64]> {
        self.angles.as_ref().map(|a| a[v].as_slice())
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Smallest angle between cyclically consecutive neighbors of `v`, or
    /// `None` when `v` has fewer than two neighbors or there is no geometry.
    pub fn min_angular_gap(&self, v: usize) -> Option<f64> {
        let angles = self.angles(v)?;
        if angles.len() < 2 {
            return None;
        }
        let mut best = f64::INFINITY;
        for i in 0..angles.len() {
            let a = angles[i];
            let b = angles[(i + 1) % angles.len()];
            let mut gap = b - a;
            if gap <= 0.0 {
                gap += std::f64::consts::TAU;
            }
            best = best.min(gap);
        }
        Some(best)
    }
}

/// A simple undirected graph, optionally embedded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PennyGraph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
    rotation: Option<RotationSystem>,
    positions: Option<Vec<Point>>,
}

impl PennyGraph {
    /// Builds a graph from an undirected edge list. Edges may be given in
    /// either orientation but each pair at most once.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self {
            adjacency,
            edge_count: edges.len(),
            rotation: None,
            positions: None,
        })
    }

    /// Attaches a rotation system; each vertex's order must be a permutation
    /// of its neighbor set.
    pub fn with_rotation(mut self, rotation: RotationSystem) -> Result<Self, GraphError> {
        if rotation.len() != self.n() {
            return Err(GraphError::RotationMismatch(rotation.len().min(self.n())));
        }
        for v in 0..self.n() {
            let mut sorted = rotation.order(v).to_vec();
            sorted.sort_unstable();
            if sorted != self.adjacency[v] {
                return Err(GraphError::RotationMismatch(v));
            }
        }
        self.rotation = Some(rotation);
        Ok(self)
    }

    pub fn with_positions(mut self, positions: Vec<Point>) -> Result<Self, GraphError> {
        if positions.len() != self.n() {
            return Err(GraphError::PositionCount {
                expected: self.n(),
                got: positions.len(),
            });
        }
        self.positions = Some(positions);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn rotation(&self) -> Option<&RotationSystem> {
        self.rotation.as_ref()
    }

    pub fn positions(&self) -> Option<&[Point]> {
        self.positions.as_deref()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Connected components as vertex lists, each sorted, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().len() == 1
    }

    /// True when the graph has at least one cycle.
    pub fn has_cycle(&self) -> bool {
        self.edge_count + self.components().len() > self.n()
    }

    /// Subgraph induced by the vertices with `keep[v]`, renumbered in
    /// ascending order. Rotation and positions are restricted accordingly.
    /// Returns the subgraph and the new-to-old id map.
    pub fn induced_subgraph(&self, keep: &[bool]) -> (PennyGraph, Vec<usize>) {
        let old_ids: Vec<usize> = (0..self.n()).filter(|&v| keep[v]).collect();
        let edges: Vec<(usize, usize)> = self
            .edges()
            .filter(|&(u, v)| keep[u] && keep[v])
            .collect();
        self.restrict(old_ids, &edges)
    }

    /// Subgraph formed by the given edges and their endpoints.
    pub fn edge_subgraph(&self, edges: &[(usize, usize)]) -> (PennyGraph, Vec<usize>) {
        let mut old_ids: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        old_ids.sort_unstable();
        old_ids.dedup();
        self.restrict(old_ids, edges)
    }

    fn restrict(&self, old_ids: Vec<usize>, edges: &[(usize, usize)]) -> (PennyGraph, Vec<usize>) {
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v] = i;
        }
        let mapped: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (new_id[u], new_id[v])).collect();
        let mut sub = PennyGraph::from_edges(old_ids.len(), &mapped)
            .expect("restriction of a simple graph is simple");
        if let Some(rot) = &self.rotation {
            let mut order = Vec::with_capacity(old_ids.len());
            let mut angles = rot.angles.as_ref().map(|_| Vec::with_capacity(old_ids.len()));
            for &v in &old_ids {
                let mut o = Vec::new();
                let mut a = Vec::new();
                for (i, &w) in rot.order(v).iter().enumerate() {
                    let nv = new_id[v];
                    let nw = new_id[w];
                    if nw != usize::MAX && sub.has_edge(nv, nw) {
                        o.push(nw);
                        if let Some(ang) = rot.angles(v) {
                            a.push(ang[i]);
                        }
                    }
                }
                order.push(o);
                if let Some(list) = angles.as_mut() {
                    list.push(a);
                }
            }
            let rotation = RotationSystem { order, angles };
            sub = sub.with_rotation(rotation).expect("restricted rotation stays consistent");
        }
        if let Some(pos) = &self.positions {
            let p = old_ids.iter().map(|&v| pos[v]).collect();
            sub = sub.with_positions(p).expect("position count matches");
        }
        (sub, old_ids)
    }
}
