//! List coloring of low-degeneracy graphs.
//!
//! [`list_color`] repeatedly removes a vertex whose remaining degree is
//! smaller than its list, then puts the vertices back in reverse order,
//! giving each the smallest listed color not used by an already-colored
//! neighbor. The bookkeeping is three plain arrays: the degree of each
//! vertex in the reduced graph, an append-only list of vertices that have
//! become removable, and the stack of removals. Each removal and each
//! replacement touches only the vertex's own adjacency and list, so the
//! total work is linear in n + e (plus list sizes). For a triangle-free
//! penny graph with three colors per vertex the removals never get stuck.
//!
//! [`exhaustive_coloring`] and [`choosability_oracle`] are brute-force
//! searches used to cross-check it on small graphs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::PennyGraph;

pub type Color = u32;

/// Stuck cores up to this size are finished by exhaustive search, so that
/// success agrees with the brute-force oracle on small inputs.
pub const CORE_SEARCH_LIMIT: usize = 16;

/// Largest graph the choosability oracle accepts.
pub const ORACLE_MAX_VERTICES: usize = 12;

/// Largest number of list assignments the choosability oracle enumerates.
pub const ORACLE_MAX_ASSIGNMENTS: u64 = 5_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("vertex {0} has an empty color list")]
    EmptyList(usize),
    #[error("{lists} lists given for a graph on {n} vertices")]
    ListCountMismatch { lists: usize, n: usize },
    #[error("lists too short: vertex {stuck} has reduced degree {degree} but only {list_len} colors ({remaining} vertices left unremoved)")]
    InsufficientLists {
        stuck: usize,
        degree: usize,
        list_len: usize,
        remaining: usize,
    },
    #[error("no proper coloring from the lists exists on the stuck core {core:?}")]
    NoColoring { core: Vec<usize> },
    #[error("instance too large for exhaustive search ({0})")]
    TooLarge(String),
}

/// Admissible colors per vertex, each list sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorLists {
    lists: Vec<Vec<Color>>,
}

impl ColorLists {
    pub fn new(lists: Vec<Vec<Color>>) -> Result<Self, ColoringError> {
        let mut lists = lists;
        for (v, l) in lists.iter_mut().enumerate() {
            if l.is_empty() {
                return Err(ColoringError::EmptyList(v));
            }
            l.sort_unstable();
            l.dedup();
        }
        Ok(Self { lists })
    }

    /// The same list for every vertex.
    pub fn uniform(n: usize, colors: &[Color]) -> Result<Self, ColoringError> {
        Self::new(vec![colors.to_vec(); n])
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: usize) -> &[Color] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    pub fn min_len(&self) -> usize {
        self.lists.iter().map(Vec::len).min().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringResult {
    pub colors: Vec<Color>,
    /// Vertices in removal order; replacement runs in reverse.
    pub removal_order: Vec<usize>,
    /// Vertices colored by exhaustive search because removal got stuck.
    pub core: Vec<usize>,
    /// Most already-colored neighbors seen when putting a vertex back.
    pub max_colored_neighbors: usize,
    /// Primitive steps: adjacency entries scanned, list entries scanned,
    /// and pushes or pops of the worklist and stack.
    pub ops: u64,
}

/// Finds a proper coloring from the lists. See the module docs.
pub fn list_color(g: &PennyGraph, lists: &ColorLists) -> Result<ColoringResult, ColoringError> {
    let n = g.n();
    if lists.len() != n {
        return Err(ColoringError::ListCountMismatch { lists: lists.len(), n });
    }
    let mut ops: u64 = 0;
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let removable = |v: usize, degree: &[usize]| degree[v] < lists.list(v).len();
    let mut low: Vec<usize> = Vec::with_capacity(n);
    let mut queued = vec![false; n];
    let mut removed = vec![false; n];
    let mut stack: Vec<usize> = Vec::with_capacity(n);

    for v in 0..n {
        ops += 1;
        if removable(v, &degree) {
            low.push(v);
            queued[v] = true;
        }
    }
    let mut head = 0;
    while head < low.len() {
        let v = low[head];
        head += 1;
        removed[v] = true;
        stack.push(v);
        ops += 1;
        for &w in g.neighbors(v) {
            ops += 1;
            if !removed[w] {
                degree[w] -= 1;
                if !queued[w] && removable(w, &degree) {
                    queued[w] = true;
                    low.push(w);
                    ops += 1;
                }
            }
        }
    }

    const UNCOLORED: Color = Color::MAX;
    let mut colors = vec![UNCOLORED; n];
    let mut core = Vec::new();
    if stack.len() < n {
        core = (0..n).filter(|&v| !removed[v]).collect();
        if core.len() > CORE_SEARCH_LIMIT {
            let stuck = *core
                .iter()
                .min_by_key(|&&v| (degree[v] as i64 - lists.list(v).len() as i64, v))
                .expect("core is non-empty");
            return Err(ColoringError::InsufficientLists {
                stuck,
                degree: degree[stuck],
                list_len: lists.list(stuck).len(),
                remaining: core.len(),
            });
        }
        let (sub, ids) = g.induced_subgraph(&removed.iter().map(|r| !r).collect::<Vec<_>>());
        let sub_lists = ColorLists {
            lists: ids.iter().map(|&v| lists.list(v).to_vec()).collect(),
        };
        match exhaustive_coloring(&sub, &sub_lists) {
            Some(c) => {
                for (i, &v) in ids.iter().enumerate() {
                    colors[v] = c[i];
                }
            }
            None => return Err(ColoringError::NoColoring { core }),
        }
    }

    let mut max_colored_neighbors = 0;
    let mut blocked: Vec<bool> = Vec::new();
    for &v in stack.iter().rev() {
        ops += 1;
        let list = lists.list(v);
        blocked.clear();
        blocked.resize(list.len(), false);
        let mut colored = 0;
        for &w in g.neighbors(v) {
            ops += 1;
            if colors[w] != UNCOLORED {
                colored += 1;
                if let Ok(i) = list.binary_search(&colors[w]) {
                    blocked[i] = true;
                }
            }
        }
        max_colored_neighbors = max_colored_neighbors.max(colored);
        let pick = (0..list.len())
            .inspect(|_| ops += 1)
            .find(|&i| !blocked[i])
            .expect("fewer colored neighbors than listed colors");
        colors[v] = list[pick];
    }

    Ok(ColoringResult {
        colors,
        removal_order: stack,
        core,
        max_colored_neighbors,
        ops,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringViolation {
    #[error("expected {expected} colors, got {got}")]
    Length { expected: usize, got: usize },
    #[error("vertex {vertex} got color {color}, not in its list")]
    NotInList { vertex: usize, color: Color },
    #[error("edge ({0}, {1}) has equal colors")]
    Monochromatic(usize, usize),
}

/// Checks list membership for every vertex and distinct colors on every
/// edge.
pub fn verify_coloring(g: &PennyGraph, lists: &ColorLists, colors: &[Color]) -> Result<(), ColoringViolation> {
    if colors.len() != g.n() || lists.len() != g.n() {
        return Err(ColoringViolation::Length { expected: g.n(), got: colors.len() });
    }
    for (v, &c) in colors.iter().enumerate() {
        if lists.list(v).binary_search(&c).is_err() {
            return Err(ColoringViolation::NotInList { vertex: v, color: c });
        }
    }
    for (u, v) in g.edges() {
        if colors[u] == colors[v] {
            return Err(ColoringViolation::Monochromatic(u, v));
        }
    }
    Ok(())
}

/// Backtracking search over vertices in id order for any proper coloring
/// from the lists.
pub fn exhaustive_coloring(g: &PennyGraph, lists: &ColorLists) -> Option<Vec<Color>> {
    fn go(g: &PennyGraph, lists: &ColorLists, v: usize, colors: &mut Vec<Color>) -> bool {
        if v == g.n() {
            return true;
        }
        for &c in lists.list(v) {
            if g.neighbors(v).iter().all(|&w| w >= v || colors[w] != c) {
                colors.push(c);
                if go(g, lists, v + 1, colors) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    if lists.len() != g.n() {
        return None;
    }
    let mut colors = Vec::with_capacity(g.n());
    go(g, lists, 0, &mut colors).then_some(colors)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Choosability {
    pub k: usize,
    pub choosable: bool,
    /// Lists admitting no proper coloring, when not choosable.
    pub witness: Option<ColorLists>,
}

/// All k-subsets of `0..universe`, in lexicographic order.
fn subsets(universe: u32, k: usize) -> Vec<Vec<Color>> {
    fn go(start: u32, universe: u32, k: usize, cur: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..universe {
            cur.push(c);
            go(c + 1, universe, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, universe, k, &mut Vec::new(), &mut out);
    out
}

/// Decides whether every assignment of k-lists drawn from a universe of 2k
/// colors admits a proper coloring.
///
/// The first vertex's list is fixed to `{0, …, k−1}` since any assignment
/// can be relabelled to that form. The 2k universe is a search bound, not a
/// proof that larger universes add nothing.
pub fn choosability_oracle(g: &PennyGraph, k: usize) -> Result<Choosability, ColoringError> {
    let n = g.n();
    if n > ORACLE_MAX_VERTICES {
        return Err(ColoringError::TooLarge(format!("{n} vertices > {ORACLE_MAX_VERTICES}")));
    }
    if k == 0 {
        let choosable = n == 0;
        return Ok(Choosability { k, choosable, witness: None });
    }
    if n == 0 {
        return Ok(Choosability { k, choosable: true, witness: None });
    }
    let universe = (2 * k) as u32;
    let options = subsets(universe, k);
    let total = (options.len() as u64).checked_pow((n - 1) as u32);
    match total {
        Some(t) if t <= ORACLE_MAX_ASSIGNMENTS => {}
        _ => {
            return Err(ColoringError::TooLarge(format!(
                "{}^{} list assignments",
                options.len(),
                n - 1
            )))
        }
    }
    let first: Vec<Color> = (0..k as u32).collect();
    let mut pick = vec![0usize; n - 1];
    loop {
        let mut lists = Vec::with_capacity(n);
        lists.push(first.clone());
        lists.extend(pick.iter().map(|&i| options[i].clone()));
        let lists = ColorLists { lists };
        if exhaustive_coloring(g, &lists).is_none() {
            return Ok(Choosability { k, choosable: false, witness: Some(lists) });
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == pick.len() {
                return Ok(Choosability { k, choosable: true, witness: None });
            }
            pick[i] += 1;
            if pick[i] < options.len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}
