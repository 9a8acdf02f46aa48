use serde::{Deserialize, Serialize};

use super::{find_triangle, GraphError, PennyGraph};

/// Blocks of a graph, each stored as its edge set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiconnectedDecomposition {
    /// Edge sets, each edge as `(u, v)` with `u < v`, sorted. Single-edge
    /// (trivial) blocks are kept.
    pub components: Vec<Vec<(usize, usize)>>,
    /// Sorted cut vertices.
    pub articulation_vertices: Vec<usize>,
    /// Block-cut tree: nodes `0..components.len()` are blocks, followed by one
    /// node per articulation vertex in `articulation_vertices` order.
    pub block_cut_tree: Vec<Vec<usize>>,
}

impl BiconnectedDecomposition {
    pub fn is_articulation(&self, v: usize) -> bool {
        self.articulation_vertices.binary_search(&v).is_ok()
    }

    /// Sorted vertex set of block `i`.
    pub fn block_vertices(&self, i: usize) -> Vec<usize> {
        let mut vs: Vec<usize> = self.components[i].iter().flat_map(|&(u, v)| [u, v]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Indices of blocks that contain a cycle.
    pub fn nontrivial_blocks(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.components.len()).filter(|&i| self.components[i].len() > 1)
    }
}

struct Frame {
    v: usize,
    parent: usize,
    next: usize,
}

/// Lowpoint decomposition into blocks (iterative, edge-stack variant).
pub fn biconnected_components(g: &PennyGraph) -> BiconnectedDecomposition {
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut components = Vec::new();
    let mut stack: Vec<Frame> = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push(Frame { v: root, parent: UNSEEN, next: 0 });
        while let Some(frame) = stack.last_mut() {
            let v = frame.v;
            if frame.next < g.degree(v) {
                let w = g.neighbors(v)[frame.next];
                frame.next += 1;
                if disc[w] == UNSEEN {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push(Frame { v: w, parent: v, next: 0 });
                } else if w != frame.parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(parent) = stack.last() {
                    let p = parent.v;
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut comp = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            comp.push((a.min(b), a.max(b)));
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        components.push(comp);
                    }
                }
            }
        }
    }

    components.sort_unstable();

    let mut block_count = vec![0usize; n];
    for comp in &components {
        let mut vs: Vec<usize> = comp.iter().flat_map(|&(u, v)| [u, v]).collect();
        vs.sort_unstable();
        vs.dedup();
        for v in vs {
            block_count[v] += 1;
        }
    }
    let articulation_vertices: Vec<usize> = (0..n).filter(|&v| block_count[v] >= 2).collect();

    let b = components.len();
    let mut block_cut_tree = vec![Vec::new(); b + articulation_vertices.len()];
    for (i, comp) in components.iter().enumerate() {
        let mut vs: Vec<usize> = comp.iter().flat_map(|&(u, v)| [u, v]).collect();
        vs.sort_unstable();
        vs.dedup();
        for v in vs {
            if let Ok(j) = articulation_vertices.binary_search(&v) {
                block_cut_tree[i].push(b + j);
                block_cut_tree[b + j].push(i);
            }
        }
    }

    BiconnectedDecomposition {
        components,
        articulation_vertices,
        block_cut_tree,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCensus {
    /// Index into [`BiconnectedDecomposition::components`].
    pub block: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Vertices with exactly two incident edges inside the block.
    pub degree_two: Vec<usize>,
}

/// Low-degree vertex counts for a triangle-free graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowDegreeCensus {
    pub has_cycle: bool,
    /// Vertices of degree at most two (in the whole graph) that are not cut
    /// vertices. Isolated vertices and leaves are included.
    pub non_articulation_low_degree: Vec<usize>,
    /// One entry per nontrivial block.
    pub blocks: Vec<BlockCensus>,
}

impl LowDegreeCensus {
    pub fn min_block_degree_two(&self) -> Option<usize> {
        self.blocks.iter().map(|b| b.degree_two.len()).min()
    }
}

/// Counts non-articulation vertices of degree ≤ 2, and degree-2 vertices
/// within each nontrivial block. Refuses graphs with a triangle.
pub fn low_degree_census(g: &PennyGraph) -> Result<LowDegreeCensus, GraphError> {
    if let Some(t) = find_triangle(g) {
        return Err(GraphError::TriangleFound(t));
    }
    let dec = biconnected_components(g);
    let non_articulation_low_degree = (0..g.n())
        .filter(|&v| g.degree(v) <= 2 && !dec.is_articulation(v))
        .collect();

    let mut block_degree = vec![0usize; g.n()];
    let mut blocks = Vec::new();
    for i in dec.nontrivial_blocks() {
        let comp = &dec.components[i];
        for &(u, v) in comp {
            block_degree[u] += 1;
            block_degree[v] += 1;
        }
        let vs = dec.block_vertices(i);
        let degree_two = vs.iter().copied().filter(|&v| block_degree[v] == 2).collect();
        for &(u, v) in comp {
            block_degree[u] = 0;
            block_degree[v] = 0;
        }
        blocks.push(BlockCensus {
            block: i,
            vertex_count: vs.len(),
            edge_count: comp.len(),
            degree_two,
        });
    }

    Ok(LowDegreeCensus {
        has_cycle: g.has_cycle(),
        non_articulation_low_degree,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(len: usize) -> PennyGraph {
        let edges: Vec<_> = (1..len).map(|i| (i - 1, i)).collect();
        PennyGraph::from_edges(len, &edges).unwrap()
    }

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

    /// Two 4-cycles 0-1-2-3 and 3-4-5-6 sharing vertex 3.
    fn square_bowtie() -> PennyGraph {
        PennyGraph::from_edges(
            7,
            &[(0, 1), (1, 2), (2, 3), (0, 3), (3, 4), (4, 5), (5, 6), (3, 6)],
        )
        .unwrap()
    }

    /// Articulation vertices by deleting each vertex and counting components.
    fn brute_force_articulation(g: &PennyGraph) -> Vec<usize> {
        let base = g.components().len();
        (0..g.n())
            .filter(|&v| {
                let keep: Vec<bool> = (0..g.n()).map(|w| w != v).collect();
                let (sub, _) = g.induced_subgraph(&keep);
                // an isolated vertex leaves one fewer component when deleted
                let expected = if g.degree(v) == 0 { base - 1 } else { base };
                sub.components().len() > expected
            })
            .collect()
    }

    #[test]
    fn path_of_three() {
        let g = path(3);
        let dec = biconnected_components(&g);
        assert_eq!(dec.components, vec![vec![(0, 1)], vec![(1, 2)]]);
        assert_eq!(dec.articulation_vertices, vec![1]);
        assert_eq!(dec.block_cut_tree, vec![vec![2], vec![2], vec![0, 1]]);
    }

    #[test]
    fn grid_is_one_block() {
        let g = grid(3);
        let dec = biconnected_components(&g);
        assert_eq!(dec.components.len(), 1);
        assert_eq!(dec.components[0].len(), 12);
        assert!(dec.articulation_vertices.is_empty());
        assert!(brute_force_articulation(&g).is_empty());
    }

    #[test]
    fn bowtie_of_squares() {
        let g = square_bowtie();
        let dec = biconnected_components(&g);
        assert_eq!(dec.components.len(), 2);
        assert_eq!(dec.articulation_vertices, vec![3]);
        assert_eq!(brute_force_articulation(&g), vec![3]);
    }

    #[test]
    fn census_grid() {
        let c = low_degree_census(&grid(3)).unwrap();
        assert!(c.has_cycle);
        assert_eq!(c.non_articulation_low_degree, vec![0, 2, 6, 8]);
        assert_eq!(c.blocks.len(), 1);
        assert_eq!(c.blocks[0].degree_two, vec![0, 2, 6, 8]);
    }

    #[test]
    fn census_four_cycle_and_tree() {
        let c4 = PennyGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let c = low_degree_census(&c4).unwrap();
        assert_eq!(c.non_articulation_low_degree.len(), 4);
        assert_eq!(c.blocks[0].degree_two.len(), 4);

        let c = low_degree_census(&path(5)).unwrap();
        assert!(!c.has_cycle);
        assert!(c.blocks.is_empty());
        assert_eq!(c.non_articulation_low_degree, vec![0, 4]);
    }

    #[test]
    fn census_refuses_triangles() {
        let tri = PennyGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(low_degree_census(&tri), Err(GraphError::TriangleFound([0, 1, 2])));
    }

    #[test]
    fn bowtie_census_counts_blocks_separately() {
        let c = low_degree_census(&square_bowtie()).unwrap();
        assert_eq!(c.non_articulation_low_degree, vec![0, 1, 2, 4, 5, 6]);
        assert!(c.blocks.iter().all(|b| b.degree_two.len() == 4));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn articulation_matches_deletion_oracle(
                n in 1usize..9,
                raw in proptest::collection::vec((0usize..9, 0usize..9), 0..16),
            ) {
                let mut edges: Vec<(usize, usize)> = raw
                    .into_iter()
                    .filter(|&(a, b)| a < n && b < n && a != b)
                    .map(|(a, b)| (a.min(b), a.max(b)))
                    .collect();
                edges.sort_unstable();
                edges.dedup();
                let g = PennyGraph::from_edges(n, &edges).unwrap();
                let dec = biconnected_components(&g);
                prop_assert_eq!(&dec.articulation_vertices, &brute_force_articulation(&g));
                let total: usize = dec.components.iter().map(Vec::len).sum();
                prop_assert_eq!(total, g.edge_count());
            }
        }
    }
}
