//! Rays on the outer boundary of a biconnected triangle-free penny graph.
//!
//! Walk the outer cycle clockwise. For a boundary vertex `v` with clockwise
//! successor `w`, let `u` be the neighbor of `v` that follows `w` clockwise
//! around `v`; the ray of `v` starts at `v`'s center and points away from
//! `u`. The turning angle at `w` is the signed angle from the ray of `v` to
//! the ray of `w`, positive for clockwise turns. The rays all point into the
//! outer face, so the turning angles sum to a full turn.
//!
//! Angles are principal values in [−π, π); antiparallel rays count as a
//! counterclockwise half turn.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{GeometryError, PennyConfiguration};
use crate::faces::extract_faces;
use crate::graph::{biconnected_components, find_triangle, PennyGraph};

/// Angles below this magnitude are treated as parallel rays.
const PARALLEL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TurningAngleTrace {
    /// Outer boundary cycle in clockwise order (ids of the input graph).
    pub cycle: Vec<usize>,
    /// Direction of each vertex's ray, radians in (-π, π].
    pub ray_directions: Vec<f64>,
    /// Turning angle at `cycle[i]` relative to the ray of `cycle[i - 1]`.
    pub angles: Vec<f64>,
    /// Degree of each boundary vertex within the component.
    pub degrees: Vec<usize>,
    pub sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TurningViolation {
    Sum { sum: f64 },
    HighDegreePositive { vertex: usize, angle: f64 },
    DegreeTwoTooLarge { vertex: usize, angle: f64 },
    TooFewPositive { count: usize },
}

impl TurningAngleTrace {
    pub fn positive_count(&self) -> usize {
        self.angles.iter().filter(|&&a| a > 0.0).count()
    }

    /// Checks the full-turn sum, the sign condition at vertices of degree
    /// three or more, the 2π/3 cap at degree-2 vertices, and that at least
    /// four angles are positive.
    pub fn violations(&self, tol: f64) -> Vec<TurningViolation> {
        let mut out = Vec::new();
        if (self.sum - TAU).abs() > tol {
            out.push(TurningViolation::Sum { sum: self.sum });
        }
        for ((&v, &a), &d) in self.cycle.iter().zip(&self.angles).zip(&self.degrees) {
            if d >= 3 && a > tol {
                out.push(TurningViolation::HighDegreePositive { vertex: v, angle: a });
            }
            if d == 2 && a >= 2.0 * PI / 3.0 {
                out.push(TurningViolation::DegreeTwoTooLarge { vertex: v, angle: a });
            }
        }
        let count = self.positive_count();
        if count < 4 {
            out.push(TurningViolation::TooFewPositive { count });
        }
        out
    }
}

/// Normalizes into [−π, π), treating values within the parallel tolerance
/// of a half turn as −π.
fn wrap(a: f64) -> f64 {
    let r = (a + PI).rem_euclid(TAU) - PI;
    if r > PI - PARALLEL_TOLERANCE || r < -PI + PARALLEL_TOLERANCE {
        -PI
    } else {
        r
    }
}

/// Trace for an embedded component (rotation and positions required). The
/// component must be biconnected and triangle-free.
pub fn turning_angles(component: &PennyGraph) -> Result<TurningAngleTrace, GeometryError> {
    trace(component, None)
}

/// Trace for block `edges` of `graph`, a tangency graph of `config`.
pub fn turning_angles_for_block(
    config: &PennyConfiguration,
    graph: &PennyGraph,
    edges: &[(usize, usize)],
) -> Result<TurningAngleTrace, GeometryError> {
    let (sub, ids) = graph.edge_subgraph(edges);
    let sub = if sub.positions().is_none() {
        let pos = ids.iter().map(|&v| config.points()[v]).collect();
        sub.with_positions(pos)?
    } else {
        sub
    };
    trace(&sub, Some(&ids))
}

fn trace(g: &PennyGraph, ids: Option<&[usize]>) -> Result<TurningAngleTrace, GeometryError> {
    let (Some(rot), Some(pos)) = (g.rotation(), g.positions()) else {
        return Err(GeometryError::MissingEmbedding);
    };
    if let Some(t) = find_triangle(g) {
        let map = |v: usize| ids.map_or(v, |m| m[v]);
        let mut t = t.map(map);
        t.sort_unstable();
        return Err(GeometryError::TriangleFound(t));
    }
    let dec = biconnected_components(g);
    if g.n() < 3 || dec.components.len() != 1 || !g.is_connected() {
        return Err(GeometryError::NotBiconnected);
    }
    let fs = extract_faces(g).map_err(|_| GeometryError::NotBiconnected)?;
    let cycle = fs.outer_face().to_vec();
    let len = cycle.len();

    let ray_directions: Vec<f64> = (0..len)
        .map(|i| {
            let v = cycle[i];
            let w = cycle[(i + 1) % len];
            let order = rot.order(v);
            let at = order.iter().position(|&x| x == w).expect("boundary dart exists");
            let u = order[(at + order.len() - 1) % order.len()];
            pos[u].angle_to(pos[v])
        })
        .collect();

    let angles: Vec<f64> = (0..len)
        .map(|i| {
            let prev = ray_directions[(i + len - 1) % len];
            let a = wrap(prev - ray_directions[i]);
            if a.abs() < PARALLEL_TOLERANCE {
                0.0
            } else {
                a
            }
        })
        .collect();
    let sum = angles.iter().sum();
    let degrees = cycle.iter().map(|&v| g.degree(v)).collect();
    let cycle = match ids {
        Some(m) => cycle.iter().map(|&v| m[v]).collect(),
        None => cycle,
    };
    Ok(TurningAngleTrace {
        cycle,
        ray_directions,
        angles,
        degrees,
        sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{normalize, tangency_graph, Point, PointSet, DEFAULT_EPSILON};

    fn graph(raw: &[(f64, f64)]) -> PennyGraph {
        let set: PointSet = raw.iter().map(|&p| Point::from(p)).collect();
        tangency_graph(&normalize(&set, DEFAULT_EPSILON).unwrap()).unwrap()
    }

    /// Signed clockwise angle between two direction vectors, computed
    /// directly from coordinates rather than from stored directions.
    fn clockwise_angle(from: (f64, f64), to: (f64, f64)) -> f64 {
        let cross = from.0 * to.1 - from.1 * to.0;
        let dot = from.0 * to.0 + from.1 * to.1;
        -cross.atan2(dot)
    }

    #[test]
    fn square_turns_a_quarter_at_each_corner() {
        let t = turning_angles(&graph(&[(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0)])).unwrap();
        assert_eq!(t.angles.len(), 4);
        for a in &t.angles {
            assert!((a - PI / 2.0).abs() < 1e-15);
        }
        assert!((t.sum - TAU).abs() < 1e-12);
        assert!(t.violations(1e-9).is_empty());
    }

    #[test]
    fn hexagon_ring_turns_sixty_degrees() {
        let raw: Vec<(f64, f64)> = (0..6)
            .map(|k| {
                let a = PI / 3.0 * k as f64;
                (2.0 * a.cos(), 2.0 * a.sin())
            })
            .collect();
        let g = graph(&raw);
        assert_eq!(g.edge_count(), 6);
        let t = turning_angles(&g).unwrap();
        for a in &t.angles {
            assert!((a - PI / 3.0).abs() < 1e-12);
        }
        assert!((t.sum - TAU).abs() < 1e-9);
    }

    #[test]
    fn three_by_three_grid_boundary() {
        let raw: Vec<(f64, f64)> = (0..3)
            .flat_map(|r| (0..3).map(move |c| (2.0 * c as f64, 2.0 * r as f64)))
            .collect();
        let g = graph(&raw);
        let t = turning_angles(&g).unwrap();
        assert_eq!(t.cycle.len(), 8);
        // oracle: the rays are axis-aligned outward normals at the corners
        // of the square boundary; recompute each angle from coordinates
        let pos = g.positions().unwrap();
        let rot = g.rotation().unwrap();
        let len = t.cycle.len();
        let ray = |i: usize| {
            let v = t.cycle[i];
            let w = t.cycle[(i + 1) % len];
            let order = rot.order(v);
            let at = order.iter().position(|&x| x == w).unwrap();
            let u = order[(at + order.len() - 1) % order.len()];
            (pos[v].x - pos[u].x, pos[v].y - pos[u].y)
        };
        for i in 0..len {
            let expected = clockwise_angle(ray((i + len - 1) % len), ray(i));
            assert!((t.angles[i] - expected).abs() < 1e-12);
            match t.degrees[i] {
                2 => assert!(t.angles[i] > 0.0),
                _ => assert!(t.angles[i] <= 0.0),
            }
        }
        assert_eq!(t.positive_count(), 4);
        assert!((t.sum - TAU).abs() < 1e-9);
        assert!(t.violations(1e-9).is_empty());
    }

    #[test]
    fn rejects_triangles_and_trees() {
        let tri = graph(&[(0.0, 0.0), (2.0, 0.0), (1.0, 3f64.sqrt())]);
        assert!(matches!(turning_angles(&tri), Err(GeometryError::TriangleFound(_))));
        let path = graph(&[(0.0, 0.0), (2.0, 0.0), (4.0, 0.0)]);
        assert_eq!(turning_angles(&path), Err(GeometryError::NotBiconnected));
    }

    #[test]
    fn reflex_corner_turns_back_by_half_a_circle() {
        // 3×3 grid without its top-right corner; the center has degree 4
        // and a quarter-turn outer wedge, so its ray runs along an edge
        let raw: Vec<(f64, f64)> = (0..3)
            .flat_map(|r| (0..3).map(move |c| (2.0 * c as f64, 2.0 * r as f64)))
            .filter(|&p| p != (4.0, 4.0))
            .collect();
        let t = turning_angles(&graph(&raw)).unwrap();
        assert_eq!(t.cycle.len(), 8);
        assert!((t.sum - TAU).abs() < 1e-9, "{t:?}");
        let center = t.cycle.iter().position(|&v| v == 4).unwrap();
        assert_eq!(t.degrees[center], 4);
        // ray of the center points north, the ray before it east
        assert!((t.angles[center] + PI / 2.0).abs() < 1e-12);
        assert_eq!(t.positive_count(), 5);
        assert!(t.violations(1e-9).is_empty(), "{t:?}");
    }

    #[test]
    fn antiparallel_rays_turn_counterclockwise() {
        // a straight degree-2 vertex at (1,2) leads down into the degree-4
        // vertex (1,1); their rays point south and north
        let mut cells: Vec<(i32, i32)> = (-1..=2).flat_map(|c| [(c, 0), (c, 1)]).collect();
        cells.extend([(1, 2), (1, 3), (0, 3), (-1, 3), (-1, 2)]);
        let raw: Vec<(f64, f64)> = cells.iter().map(|&(c, r)| (2.0 * c as f64, 2.0 * r as f64)).collect();
        let g = graph(&raw);
        let t = turning_angles(&g).unwrap();
        let pos = g.positions().unwrap();
        let at = |x: f64, y: f64| {
            let v = (0..g.n()).find(|&v| pos[v] == Point::new(x, y)).unwrap();
            t.cycle.iter().position(|&c| c == v).unwrap()
        };
        assert!((t.angles[at(2.0, 2.0)] + PI).abs() < 1e-12, "{t:?}");
        assert!((t.sum - TAU).abs() < 1e-9, "{t:?}");
        assert!(t.violations(1e-9).is_empty(), "{t:?}");
    }

    #[test]
    fn wrap_range() {
        assert_eq!(wrap(PI), -PI);
        assert_eq!(wrap(-PI), -PI);
        assert_eq!(wrap(PI - 1e-15), -PI);
        assert!((wrap(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((wrap(PI / 2.0) - PI / 2.0).abs() < 1e-15);
    }
}
