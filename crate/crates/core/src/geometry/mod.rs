//! Point sets, normalization to unit disks, and tangency graphs.
//!
//! Coordinates are in units of the disk radius once normalized: the closest
//! pair of centers sits at distance exactly 2, so each center carries a unit
//! disk and tangencies become edges.

mod voronoi;
mod turning;

pub use turning::{turning_angles, turning_angles_for_block, TurningAngleTrace, TurningViolation};
pub use voronoi::{voronoi_cells, VoronoiCell, HEXAGON_AREA};

use std::collections::{BTreeSet, HashMap};

use ordered_float::OrderedFloat;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, PennyGraph, RotationSystem};

/// Default relative tangency tolerance.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Integer coordinates beyond this magnitude do not take the exact path,
/// keeping squared distances exactly representable.
const EXACT_COORD_LIMIT: f64 = (1u64 << 26) as f64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("empty point set")]
    EmptyInput,
    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("point {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("tolerance {0} outside (0, 0.5)")]
    InvalidEpsilon(f64),
    #[error("disks {i} and {j} overlap (center distance {distance})")]
    OverlapDetected { i: usize, j: usize, distance: f64 },
    #[error("component is not biconnected")]
    NotBiconnected,
    #[error("triangle found on vertices {0:?}")]
    TriangleFound([usize; 3]),
    #[error("graph has no geometric embedding")]
    MissingEmbedding,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn dist_sq(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    /// Direction from `self` to `other` in (-π, π].
    pub fn angle_to(self, other: Point) -> f64 {
        let a = (other.y - self.y).atan2(other.x - self.x);
        if a == -std::f64::consts::PI {
            std::f64::consts::PI
        } else {
            a
        }
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Self { x, y }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Self {
        Self { points }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Closest pair `(i, j, distance)` with `i < j`, by an x-sorted sweep.
    pub fn closest_pair(&self) -> Option<(usize, usize, f64)> {
        closest_pair(&self.points)
    }
}

impl FromIterator<Point> for PointSet {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

/// Integer frame for inputs whose coordinates are all integral: center
/// distance 2 corresponds to squared integer distance `target_sq`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct ExactFrame {
    coords: Vec<(i64, i64)>,
    target_sq: i64,
}

impl ExactFrame {
    fn dist_sq(&self, i: usize, j: usize) -> i64 {
        let (ax, ay) = self.coords[i];
        let (bx, by) = self.coords[j];
        (ax - bx).pow(2) + (ay - by).pow(2)
    }
}

/// Centers of interior-disjoint unit disks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PennyConfiguration {
    points: Vec<Point>,
    epsilon: f64,
    /// Minimum pairwise distance of the input before scaling.
    min_dist: Option<f64>,
    exact: Option<ExactFrame>,
}

impl PennyConfiguration {
    /// Takes disk centers as given (no scaling). Overlaps are reported by
    /// [`tangency_graph`].
    pub fn from_centers(points: Vec<Point>, epsilon: f64) -> Result<Self, GeometryError> {
        check_epsilon(epsilon)?;
        if points.is_empty() {
            return Err(GeometryError::EmptyInput);
        }
        check_finite(&points)?;
        let min_dist = closest_pair(&points).map(|(_, _, d)| d);
        let exact = integer_coords(&points).map(|coords| ExactFrame { coords, target_sq: 4 });
        Ok(Self { points, epsilon, min_dist, exact })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn min_dist(&self) -> Option<f64> {
        self.min_dist
    }

    /// Whether tangency is decided in exact integer arithmetic.
    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn point_set(&self) -> PointSet {
        PointSet::new(self.points.clone())
    }
}

fn check_epsilon(epsilon: f64) -> Result<(), GeometryError> {
    if epsilon > 0.0 && epsilon < 0.5 {
        Ok(())
    } else {
        Err(GeometryError::InvalidEpsilon(epsilon))
    }
}

fn check_finite(points: &[Point]) -> Result<(), GeometryError> {
    match points.iter().position(|p| !p.x.is_finite() || !p.y.is_finite()) {
        Some(i) => Err(GeometryError::NonFinite(i)),
        None => Ok(()),
    }
}

fn integer_coords(points: &[Point]) -> Option<Vec<(i64, i64)>> {
    points
        .iter()
        .map(|p| {
            let ok = |c: f64| c.fract() == 0.0 && c.abs() <= EXACT_COORD_LIMIT;
            (ok(p.x) && ok(p.y)).then(|| (p.x as i64, p.y as i64))
        })
        .collect()
}

fn closest_pair(points: &[Point]) -> Option<(usize, usize, f64)> {
    if points.len() < 2 {
        return None;
    }
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        points[a]
            .x
            .total_cmp(&points[b].x)
            .then(points[a].y.total_cmp(&points[b].y))
    });
    let mut active: BTreeSet<(OrderedFloat<f64>, usize)> = BTreeSet::new();
    let mut best = f64::INFINITY;
    let mut pair = (0, 0);
    let mut left = 0;
    for &i in &idx {
        let p = points[i];
        while left < idx.len() && p.x - points[idx[left]].x > best {
            let j = idx[left];
            active.remove(&(OrderedFloat(points[j].y), j));
            left += 1;
        }
        let lo = (OrderedFloat(p.y - best), 0);
        let hi = (OrderedFloat(p.y + best), usize::MAX);
        for &(_, j) in active.range(lo..=hi) {
            let d = p.dist(points[j]);
            if d < best {
                best = d;
                pair = (i.min(j), i.max(j));
            }
        }
        active.insert((OrderedFloat(p.y), i));
    }
    Some((pair.0, pair.1, best))
}

/// Scales the point set so its minimum pairwise distance is 2.
///
/// Integer inputs keep an exact integer frame so tangency is decided without
/// rounding; a single point is returned unchanged.
pub fn normalize(points: &PointSet, epsilon: f64) -> Result<PennyConfiguration, GeometryError> {
    check_epsilon(epsilon)?;
    if points.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    check_finite(points.points())?;
    let Some((i, j, d)) = points.closest_pair() else {
        return Ok(PennyConfiguration {
            points: points.points().to_vec(),
            epsilon,
            min_dist: None,
            exact: integer_coords(points.points()).map(|coords| ExactFrame { coords, target_sq: 4 }),
        });
    };
    let extent = points
        .points()
        .iter()
        .fold(1.0f64, |m, p| m.max(p.x.abs()).max(p.y.abs()));
    if d <= epsilon * extent {
        return Err(GeometryError::DuplicatePoints(i, j));
    }
    let scale = 2.0 / d;
    let scaled = points
        .points()
        .iter()
        .map(|p| Point::new(p.x * scale, p.y * scale))
        .collect();
    let exact = integer_coords(points.points()).map(|coords| {
        let frame = ExactFrame { coords, target_sq: 0 };
        let target_sq = frame.dist_sq(i, j);
        ExactFrame { target_sq, ..frame }
    });
    Ok(PennyConfiguration {
        points: scaled,
        epsilon,
        min_dist: Some(d),
        exact,
    })
}

/// Uniform-grid bucketing of sites for fixed-radius neighbor queries.
pub(crate) struct SiteGrid {
    cell: f64,
    buckets: HashMap<(i64, i64), Vec<usize>>,
}

impl SiteGrid {
    pub(crate) fn new(points: &[Point], cell: f64) -> Self {
        let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            buckets.entry(Self::key(p, cell)).or_default().push(i);
        }
        Self { cell, buckets }
    }

    fn key(p: &Point, cell: f64) -> (i64, i64) {
        ((p.x / cell).floor() as i64, (p.y / cell).floor() as i64)
    }

    /// Candidate sites within `radius` of `p` (a superset; callers filter by
    /// distance). Ascending id order.
    pub(crate) fn near(&self, p: &Point, radius: f64) -> Vec<usize> {
        let (cx, cy) = Self::key(p, self.cell);
        let reach = (radius / self.cell).ceil() as i64;
        let mut out = Vec::new();
        for dx in -reach..=reach {
            for dy in -reach..=reach {
                if let Some(list) = self.buckets.get(&(cx + dx, cy + dy)) {
                    out.extend_from_slice(list);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Contact graph of the configuration with its counterclockwise rotation
/// system and the centers as positions.
pub fn tangency_graph(config: &PennyConfiguration) -> Result<PennyGraph, GeometryError> {
    let pts = config.points();
    let eps = config.epsilon();
    let lower = 2.0 * (1.0 - eps);
    let upper = 2.0 * (1.0 + eps);
    let grid = SiteGrid::new(pts, upper);
    let mut edges = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        for j in grid.near(p, upper) {
            if j <= i {
                continue;
            }
            let (tangent, overlap) = match &config.exact {
                Some(frame) => {
                    let d2 = frame.dist_sq(i, j);
                    (d2 == frame.target_sq, d2 < frame.target_sq)
                }
                None => {
                    let d = p.dist(pts[j]);
                    (d >= lower && d <= upper, d < lower)
                }
            };
            if overlap {
                return Err(GeometryError::OverlapDetected {
                    i,
                    j,
                    distance: p.dist(pts[j]),
                });
            }
            if tangent {
                edges.push((i, j));
            }
        }
    }
    let g = PennyGraph::from_edges(pts.len(), &edges)?;
    let mut order = Vec::with_capacity(pts.len());
    let mut angles = Vec::with_capacity(pts.len());
    for (v, p) in pts.iter().enumerate() {
        let mut nb: Vec<(f64, usize)> = g.neighbors(v).iter().map(|&w| (p.angle_to(pts[w]), w)).collect();
        nb.sort_by(|a, b| a.0.total_cmp(&b.0));
        angles.push(nb.iter().map(|x| x.0).collect());
        order.push(nb.into_iter().map(|x| x.1).collect());
    }
    let g = g
        .with_rotation(RotationSystem::geometric(order, angles))?
        .with_positions(pts.to_vec())?;
    Ok(g)
}
