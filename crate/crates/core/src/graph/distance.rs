use std::collections::VecDeque;

use rayon::prelude::*;

use super::{GraphError, PennyGraph};

/// Hop distances from `source`; `None` for unreachable vertices.
pub fn bfs_distances(g: &PennyGraph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    let mut queue = VecDeque::new();
    dist[source] = Some(0);
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("queued vertices are labelled");
        for &w in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Largest distance from `source`, or `Disconnected` if some vertex is
/// unreachable.
pub fn eccentricity(g: &PennyGraph, source: usize) -> Result<usize, GraphError> {
    bfs_distances(g, source)
        .into_iter()
        .try_fold(0, |acc, d| d.map(|d| acc.max(d)).ok_or(GraphError::Disconnected))
}

/// Exact diameter by BFS from every vertex (sources run in parallel).
pub fn diameter(g: &PennyGraph) -> Result<usize, GraphError> {
    if g.n() == 0 {
        return Ok(0);
    }
    (0..g.n())
        .into_par_iter()
        .map(|s| eccentricity(g, s))
        .try_reduce(|| 0, |a, b| Ok(a.max(b)))
}

/// Double-sweep lower bound: BFS from vertex 0, then from a farthest vertex.
/// Never larger than the true diameter.
pub fn diameter_lower_bound(g: &PennyGraph) -> Result<usize, GraphError> {
    if g.n() == 0 {
        return Ok(0);
    }
    let first = bfs_distances(g, 0);
    let mut far = 0;
    let mut best = 0;
    for (v, d) in first.iter().enumerate() {
        let d = d.ok_or(GraphError::Disconnected)?;
        if d > best {
            best = d;
            far = v;
        }
    }
    eccentricity(g, far)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(m: usize) -> PennyGraph {
        let mut edges = Vec::new();
        for r in 0..m {
            for c in 0..m {
                let v = r * m + c;
                if c + 1 < m {
                    edges.push((v, v + 1));
                }
                if r + 1 < m {
                    edges.push((v, v + m));
                }
            }
        }
        PennyGraph::from_edges(m * m, &edges).unwrap()
    }

    /// Floyd–Warshall all-pairs distances.
    fn all_pairs_diameter(g: &PennyGraph) -> usize {
        let n = g.n();
        let inf = usize::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for v in 0..n {
            d[v][v] = 0;
            for &w in g.neighbors(v) {
                d[v][w] = 1;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = d[i][k] + d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        d.iter().flatten().copied().max().unwrap()
    }

    #[test]
    fn path_and_single_vertex() {
        let p = PennyGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(diameter(&p), Ok(4));
        assert_eq!(diameter(&PennyGraph::from_edges(1, &[]).unwrap()), Ok(0));
    }

    #[test]
    fn grid_diameters_match_floyd_warshall() {
        for m in 1..=6 {
            let g = grid(m);
            let oracle = all_pairs_diameter(&g);
            assert_eq!(oracle, 2 * (m - 1));
            assert_eq!(diameter(&g), Ok(oracle));
            assert!(diameter_lower_bound(&g).unwrap() <= oracle);
        }
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = PennyGraph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(diameter(&g), Err(GraphError::Disconnected));
        assert_eq!(bfs_distances(&g, 0), vec![Some(0), Some(1), None]);
    }
}
