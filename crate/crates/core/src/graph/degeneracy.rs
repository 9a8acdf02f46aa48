use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::PennyGraph;

/// A smallest-last vertex ordering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyOrder {
    /// Vertices in removal order.
    pub order: Vec<usize>,
    /// Maximum number of later neighbors over all vertices.
    pub degeneracy: usize,
    /// Number of neighbors of each vertex occurring later in `order`.
    pub later_degree: Vec<usize>,
    /// Index of each vertex within `order`.
    pub position: Vec<usize>,
}

impl DegeneracyOrder {
    /// Neighbors of `v` that occur after it in the ordering.
    pub fn later_neighbors<'a>(&'a self, g: &'a PennyGraph, v: usize) -> impl Iterator<Item = usize> + 'a {
        let pos = self.position[v];
        g.neighbors(v).iter().copied().filter(move |&w| self.position[w] > pos)
    }
}

/// Repeatedly removes a minimum-degree vertex (lowest id on ties).
///
/// Buckets are indexed by current degree and kept as ordered sets so the
/// tie-break is exact; the minimum bucket pointer only moves down by one per
/// removal, so the scan cost is O(n + e) and set operations add a log factor.
pub fn degeneracy_order(g: &PennyGraph) -> DegeneracyOrder {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_degree = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); max_degree + 1];
    for v in 0..n {
        buckets[degree[v]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut position = vec![0; n];
    let mut later_degree = vec![0; n];
    let mut degeneracy = 0;
    let mut low = 0;

    for step in 0..n {
        while buckets[low].is_empty() {
            low += 1;
        }
        let v = buckets[low].pop_first().expect("non-empty bucket");
        removed[v] = true;
        order.push(v);
        position[v] = step;
        later_degree[v] = degree[v];
        degeneracy = degeneracy.max(degree[v]);
        for &w in g.neighbors(v) {
            if !removed[w] {
                buckets[degree[w]].remove(&w);
                degree[w] -= 1;
                buckets[degree[w]].insert(w);
            }
        }
        low = low.saturating_sub(1);
    }

    DegeneracyOrder {
        order,
        degeneracy,
        later_degree,
        position,
    }
}

/// Returns some triangle as a sorted triple, or `None` for triangle-free
/// graphs. Every triangle is found from its earliest vertex in a degeneracy
/// order, whose other two vertices are both later neighbors.
pub fn find_triangle(g: &PennyGraph) -> Option<[usize; 3]> {
    let ord = degeneracy_order(g);
    for &v in &ord.order {
        let later: Vec<usize> = ord.later_neighbors(g, v).collect();
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                if g.has_edge(a, b) {
                    let mut t = [v, a, b];
                    t.sort_unstable();
                    return Some(t);
                }
            }
        }
    }
    None
}
