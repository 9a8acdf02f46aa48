//! Instance families with known ground truth.
//!
//! Every generator emits disk centers at spacing 2 and passes them through
//! [`normalize`], so the output is a valid [`PennyConfiguration`]. Grid-based
//! families use integer coordinates and therefore exact tangency.
//!
//! Random subgrids draw from ChaCha8 (`rand_chacha`) seeded with
//! `seed_from_u64`. Cells are visited row by row; each consumes one
//! `next_u64` value `x` and is kept iff `(x >> 11) · 2⁻⁵³ < density`. The
//! largest connected component survives (the one with the smallest vertex id
//! on ties).

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, ColorLists};
use crate::faces::grid_edge_bound;
use crate::geometry::{normalize, tangency_graph, GeometryError, PennyConfiguration, Point, PointSet, DEFAULT_EPSILON};
use crate::graph::{diameter, find_triangle, PennyGraph};

/// Name of the random stream, recorded in reports.
pub const PRNG_NAME: &str = "ChaCha8 (rand_chacha 0.9, seed_from_u64)";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no grid cell survived the random draw")]
    Degenerate,
    #[error("no trimming order keeps the graph connected and valid")]
    TrimFailed,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn invalid(msg: impl Into<String>) -> GeneratorError {
    GeneratorError::InvalidParameter(msg.into())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Grid { m: usize },
    HexPacking { rings: usize },
    Cycle { len: usize },
    Path { len: usize },
    TrimmedGrid { rows: usize, cols: usize, remove: usize },
    RandomSubgrid { m: usize, density: f64, seed: u64 },
    SquaregraphTight { n: usize },
}

/// Properties an instance is known to have; `None` when not known in closed
/// form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub n: Option<usize>,
    pub e: Option<usize>,
    pub diameter: Option<usize>,
    pub triangle_free: Option<bool>,
    pub degree_two: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    #[serde(flatten)]
    pub family: Family,
    pub expected: GroundTruth,
}

impl InstanceSpec {
    pub fn grid(m: usize) -> Self {
        let expected = GroundTruth {
            n: Some(m * m),
            e: Some(2 * m * m.saturating_sub(1)),
            diameter: Some(2 * m.saturating_sub(1)),
            triangle_free: Some(true),
            degree_two: Some(if m >= 2 { 4 } else { 0 }),
        };
        Self { family: Family::Grid { m }, expected }
    }

    pub fn hex_packing(rings: usize) -> Self {
        let expected = GroundTruth {
            n: Some(1 + 3 * rings * (rings + 1)),
            e: Some(9 * rings * rings + 3 * rings),
            diameter: Some(2 * rings),
            triangle_free: Some(rings == 0),
            degree_two: Some(0),
        };
        Self { family: Family::HexPacking { rings }, expected }
    }

    pub fn cycle(len: usize) -> Self {
        let expected = GroundTruth {
            n: Some(len),
            e: Some(len),
            diameter: Some(len / 2),
            triangle_free: Some(len >= 4),
            degree_two: Some(len),
        };
        Self { family: Family::Cycle { len }, expected }
    }

    pub fn path(len: usize) -> Self {
        let expected = GroundTruth {
            n: Some(len),
            e: Some(len.saturating_sub(1)),
            diameter: Some(len.saturating_sub(1)),
            triangle_free: Some(true),
            degree_two: Some(len.saturating_sub(2)),
        };
        Self { family: Family::Path { len }, expected }
    }

    pub fn trimmed_grid(rows: usize, cols: usize, remove: usize) -> Self {
        let full_edges = (2 * rows * cols).saturating_sub(rows + cols);
        let expected = GroundTruth {
            n: Some((rows * cols).saturating_sub(remove)),
            e: Some(full_edges.saturating_sub(2 * remove)),
            triangle_free: Some(true),
            ..GroundTruth::default()
        };
        Self { family: Family::TrimmedGrid { rows, cols, remove }, expected }
    }

    pub fn random_subgrid(m: usize, density: f64, seed: u64) -> Self {
        let expected = GroundTruth { triangle_free: Some(true), ..GroundTruth::default() };
        Self { family: Family::RandomSubgrid { m, density, seed }, expected }
    }

    pub fn squaregraph_tight(n: usize) -> Self {
        let expected = GroundTruth {
            n: Some(n),
            e: Some(grid_edge_bound(n).max(0) as usize),
            triangle_free: Some(true),
            ..GroundTruth::default()
        };
        Self { family: Family::SquaregraphTight { n }, expected }
    }

    /// Generates the configuration.
    pub fn build(&self) -> Result<PennyConfiguration, GeneratorError> {
        match self.family {
            Family::Grid { m } => gen_grid(m),
            Family::HexPacking { rings } => gen_hex_packing(rings),
            Family::Cycle { len } => gen_cycle(len),
            Family::Path { len } => gen_path(len),
            Family::TrimmedGrid { rows, cols, remove } => gen_trimmed_grid(rows, cols, remove),
            Family::RandomSubgrid { m, density, seed } => gen_random_subgrid(m, density, seed),
            Family::SquaregraphTight { n } => {
                let sq = crate::squaregraph::tight_squaregraph(n)
                    .map_err(|e| invalid(e.to_string()))?;
                let pos = sq.graph().positions().expect("tight squaregraphs are drawn on the grid");
                Ok(normalize(&PointSet::new(pos.to_vec()), DEFAULT_EPSILON)?)
            }
        }
    }

    /// Short human-readable label.
    pub fn label(&self) -> String {
        match &self.family {
            Family::Grid { m } => format!("grid(m={m})"),
            Family::HexPacking { rings } => format!("hex_packing(rings={rings})"),
            Family::Cycle { len } => format!("cycle(len={len})"),
            Family::Path { len } => format!("path(len={len})"),
            Family::TrimmedGrid { rows, cols, remove } => format!("trimmed_grid({rows}x{cols}, remove={remove})"),
            Family::RandomSubgrid { m, density, seed } => format!("random_subgrid(m={m}, density={density}, seed={seed})"),
            Family::SquaregraphTight { n } => format!("squaregraph_tight(n={n})"),
        }
    }

    /// Compares the declared ground truth with the built instance. Returns
    /// one message per mismatch.
    pub fn check(&self, config: &PennyConfiguration) -> Result<Vec<String>, GeneratorError> {
        let g = tangency_graph(config)?;
        let mut out = Vec::new();
        let mut cmp = |what: &str, expected: Option<usize>, got: usize| {
            if let Some(x) = expected {
                if x != got {
                    out.push(format!("{what}: expected {x}, got {got}"));
                }
            }
        };
        cmp("n", self.expected.n, g.n());
        cmp("e", self.expected.e, g.edge_count());
        cmp("degree_two", self.expected.degree_two, (0..g.n()).filter(|&v| g.degree(v) == 2).count());
        if let Some(d) = self.expected.diameter {
            match diameter(&g) {
                Ok(got) if got == d => {}
                Ok(got) => out.push(format!("diameter: expected {d}, got {got}")),
                Err(e) => out.push(format!("diameter: {e}")),
            }
        }
        if let Some(tf) = self.expected.triangle_free {
            let got = find_triangle(&g).is_none();
            if got != tf {
                out.push(format!("triangle_free: expected {tf}, got {got}"));
            }
        }
        Ok(out)
    }
}

fn from_points(points: Vec<Point>) -> Result<PennyConfiguration, GeneratorError> {
    Ok(normalize(&PointSet::new(points), DEFAULT_EPSILON)?)
}

fn grid_points(rows: usize, cols: usize) -> Vec<Point> {
    (0..rows)
        .flat_map(|r| (0..cols).map(move |c| Point::new(2.0 * c as f64, 2.0 * r as f64)))
        .collect()
}

/// m×m centers at spacing 2, row-major ids.
pub fn gen_grid(m: usize) -> Result<PennyConfiguration, GeneratorError> {
    gen_rect_grid(m, m)
}

pub fn gen_rect_grid(rows: usize, cols: usize) -> Result<PennyConfiguration, GeneratorError> {
    if rows == 0 || cols == 0 {
        return Err(invalid("grid dimensions must be at least 1"));
    }
    from_points(grid_points(rows, cols))
}

/// Triangular-lattice hexagon with `rings` rings around a central penny.
pub fn gen_hex_packing(rings: usize) -> Result<PennyConfiguration, GeneratorError> {
    let r = rings as i64;
    let sqrt3 = 3f64.sqrt();
    let mut pts = Vec::new();
    for b in -r..=r {
        for a in -r..=r {
            if (a + b).abs() <= r {
                pts.push(Point::new((2 * a + b) as f64, sqrt3 * b as f64));
            }
        }
    }
    from_points(pts)
}

/// Regular polygon with side 2 (the square for len 4).
pub fn gen_cycle(len: usize) -> Result<PennyConfiguration, GeneratorError> {
    if len < 3 {
        return Err(invalid("cycle length must be at least 3"));
    }
    if len == 4 {
        return from_points(vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(2.0, 2.0),
            Point::new(0.0, 2.0),
        ]);
    }
    let step = std::f64::consts::TAU / len as f64;
    let radius = 1.0 / (std::f64::consts::PI / len as f64).sin();
    let pts = (0..len)
        .map(|i| {
            let a = step * i as f64;
            Point::new(radius * a.cos(), radius * a.sin())
        })
        .collect();
    from_points(pts)
}

/// Collinear pennies.
pub fn gen_path(len: usize) -> Result<PennyConfiguration, GeneratorError> {
    if len == 0 {
        return Err(invalid("path length must be at least 1"));
    }
    from_points((0..len).map(|i| Point::new(2.0 * i as f64, 0.0)).collect())
}

/// Seeded random subset of the m×m grid, largest component kept.
pub fn gen_random_subgrid(m: usize, density: f64, seed: u64) -> Result<PennyConfiguration, GeneratorError> {
    if m == 0 {
        return Err(invalid("grid size must be at least 1"));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(invalid("density must lie in (0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = grid_points(m, m);
    let kept: Vec<Point> = all
        .into_iter()
        .filter(|_| ((rng.next_u64() >> 11) as f64) * (1.0 / (1u64 << 53) as f64) < density)
        .collect();
    if kept.is_empty() {
        return Err(GeneratorError::Degenerate);
    }
    let config = from_points(kept)?;
    let g = tangency_graph(&config)?;
    let comps = g.components();
    let largest = comps
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| a.len().cmp(&b.len()).then(j.cmp(i)))
        .map(|(_, c)| c)
        .expect("at least one component");
    from_points(largest.iter().map(|&v| config.points()[v]).collect())
}

/// rows×cols grid with `remove` degree-2 vertices deleted one at a time,
/// lowest id first among those whose removal keeps the graph connected.
pub fn gen_trimmed_grid(rows: usize, cols: usize, remove: usize) -> Result<PennyConfiguration, GeneratorError> {
    let base = gen_rect_grid(rows, cols)?;
    if remove >= rows * cols {
        return Err(invalid("cannot remove every vertex"));
    }
    let g = tangency_graph(&base)?;
    let keep = trim_degree_two(&g, remove, |_| true).ok_or(GeneratorError::TrimFailed)?;
    from_points((0..g.n()).filter(|&v| keep[v]).map(|v| base.points()[v]).collect())
}

/// Deletes `count` vertices of current degree 2, each time taking the lowest
/// id whose removal leaves a connected graph accepted by `accept`, and
/// backtracking if a branch dead-ends. Returns the surviving vertex mask.
pub(crate) fn trim_degree_two(
    g: &PennyGraph,
    count: usize,
    accept: impl Fn(&PennyGraph) -> bool,
) -> Option<Vec<bool>> {
    fn search(
        g: &PennyGraph,
        keep: &mut Vec<bool>,
        left: usize,
        accept: &dyn Fn(&PennyGraph) -> bool,
    ) -> bool {
        if left == 0 {
            return true;
        }
        let candidates: Vec<usize> = (0..g.n())
            .filter(|&v| keep[v] && g.neighbors(v).iter().filter(|&&w| keep[w]).count() == 2)
            .collect();
        for v in candidates {
            keep[v] = false;
            let (sub, _) = g.induced_subgraph(keep);
            if sub.is_connected() && accept(&sub) && search(g, keep, left - 1, accept) {
                return true;
            }
            keep[v] = true;
        }
        false
    }
    let mut keep = vec![true; g.n()];
    search(g, &mut keep, count, &accept).then_some(keep)
}

/// Seeded lists of `k` distinct colors drawn from `0..universe`: a partial
/// Fisher–Yates shuffle per vertex, each draw `next_u64() % remaining`.
pub fn random_lists(n: usize, k: usize, universe: u32, seed: u64) -> Result<ColorLists, GeneratorError> {
    if k == 0 || k > universe as usize {
        return Err(invalid("need 1 ≤ k ≤ universe"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<Color> = (0..universe).collect();
    let lists = (0..n)
        .map(|_| {
            for i in 0..k {
                let j = i + (rng.next_u64() % (pool.len() - i) as u64) as usize;
                pool.swap(i, j);
            }
            pool[..k].to_vec()
        })
        .collect();
    ColorLists::new(lists).map_err(|e| invalid(e.to_string()))
}

/// Deterministic mixed corpus of random triangle-free instances: about four
/// fifths subgrids (m in 3..=40, density in [0.55, 1)) and the rest cycles
/// (half of them of length 4..=12, the others 13..=200).
pub fn random_corpus(count: usize, seed: u64) -> Vec<InstanceSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unit = move || ((rng.next_u64() >> 11) as f64) * (1.0 / (1u64 << 53) as f64);
    let pick = |lo: usize, hi: usize, u: f64| lo + ((hi - lo + 1) as f64 * u) as usize;
    (0..count)
        .map(|_| {
            let family = unit();
            if family < 0.8 {
                let m = pick(3, 40, unit());
                let density = 0.55 + 0.45 * unit();
                let seed = (unit() * (1u64 << 53) as f64) as u64;
                InstanceSpec::random_subgrid(m, density, seed)
            } else if unit() < 0.5 {
                InstanceSpec::cycle(pick(4, 12, unit()))
            } else {
                InstanceSpec::cycle(pick(13, 200, unit()))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges_by_enumeration(c: &PennyConfiguration) -> usize {
        let p = c.points();
        let mut e = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if (p[i].dist(p[j]) - 2.0).abs() <= 2e-9 {
                    e += 1;
                }
            }
        }
        e
    }

    #[test]
    fn grid_edge_counts() {
        assert_eq!(edges_by_enumeration(&gen_grid(1).unwrap()), 0);
        assert_eq!(edges_by_enumeration(&gen_grid(3).unwrap()), 12);
        let g5 = gen_grid(5).unwrap();
        assert_eq!(edges_by_enumeration(&g5), 40);
        assert_eq!(40, 2 * 25 - 2 * 5);
        assert!(g5.is_exact());
    }

    #[test]
    fn hex_packing_edge_counts() {
        assert_eq!(gen_hex_packing(0).unwrap().len(), 1);
        let h1 = gen_hex_packing(1).unwrap();
        assert_eq!(h1.len(), 7);
        assert_eq!(edges_by_enumeration(&h1), 12);
        let h2 = gen_hex_packing(2).unwrap();
        assert_eq!(h2.len(), 19);
        assert_eq!(edges_by_enumeration(&h2), 42);
        assert_eq!(crate::faces::penny_edge_bound(19), 42);
    }

    #[test]
    fn cycles() {
        let c5 = gen_cycle(5).unwrap();
        let g = tangency_graph(&c5).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(edges_by_enumeration(&c5), 5);
        assert_eq!(tangency_graph(&gen_cycle(3).unwrap()).unwrap().edge_count(), 3);
        assert_eq!(tangency_graph(&gen_cycle(4).unwrap()).unwrap().edge_count(), 4);
        assert!(gen_cycle(2).is_err());
        // circumradius of the side-2 pentagon
        let r = c5.points()[0].x.hypot(c5.points()[0].y);
        assert!((r - 1.0 / (std::f64::consts::PI / 5.0).sin()).abs() < 1e-12);
    }

    #[test]
    fn declared_ground_truths_hold() {
        let specs = [
            InstanceSpec::grid(1),
            InstanceSpec::grid(2),
            InstanceSpec::grid(6),
            InstanceSpec::hex_packing(0),
            InstanceSpec::hex_packing(3),
            InstanceSpec::cycle(3),
            InstanceSpec::cycle(4),
            InstanceSpec::cycle(9),
            InstanceSpec::path(1),
            InstanceSpec::path(6),
            InstanceSpec::trimmed_grid(4, 4, 3),
            InstanceSpec::random_subgrid(12, 0.7, 3),
            InstanceSpec::squaregraph_tight(14),
        ];
        for spec in specs {
            let c = spec.build().unwrap();
            assert_eq!(spec.check(&c).unwrap(), Vec::<String>::new(), "{}", spec.label());
        }
    }

    #[test]
    fn random_subgrid_is_reproducible() {
        let a = gen_random_subgrid(10, 0.8, 42).unwrap();
        let b = gen_random_subgrid(10, 0.8, 42).unwrap();
        assert_eq!(a.points(), b.points());
        let c = gen_random_subgrid(10, 0.8, 43).unwrap();
        assert_ne!(a.points(), c.points());
        let full = gen_random_subgrid(6, 1.0, 1).unwrap();
        assert_eq!(full.points(), gen_grid(6).unwrap().points());
        assert!(gen_random_subgrid(5, 0.0, 1).is_err());
        let g = tangency_graph(&a).unwrap();
        assert!(g.is_connected());
        assert!(find_triangle(&g).is_none());
    }

    #[test]
    fn random_lists_are_distinct_and_seeded() {
        let l = random_lists(200, 3, 6, 9).unwrap();
        for list in l.lists() {
            assert_eq!(list.len(), 3);
            assert!(list.iter().all(|&c| c < 6));
        }
        assert_eq!(l, random_lists(200, 3, 6, 9).unwrap());
        assert_ne!(l, random_lists(200, 3, 6, 10).unwrap());
        assert!(random_lists(3, 7, 6, 0).is_err());
    }

    #[test]
    fn corpus_is_reproducible() {
        assert_eq!(random_corpus(50, 7), random_corpus(50, 7));
        assert_ne!(random_corpus(50, 7), random_corpus(50, 8));
    }

    #[test]
    fn spec_json_is_flat() {
        let json = serde_json::to_value(InstanceSpec::grid(3)).unwrap();
        assert_eq!(json["family"], "grid");
        assert_eq!(json["m"], 3);
        assert_eq!(json["expected"]["e"], 12);
        let back: InstanceSpec = serde_json::from_value(json).unwrap();
        assert_eq!(back, InstanceSpec::grid(3));
    }
}
