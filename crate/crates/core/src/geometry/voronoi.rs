use serde::{Deserialize, Serialize};

use super::{PennyConfiguration, Point, SiteGrid};

/// Area of the regular hexagon circumscribed about a unit circle, 2√3.
pub const HEXAGON_AREA: f64 = 3.464_101_615_137_754_6;

/// Initial search radius for sites that can cut a cell.
const SITE_RADIUS: f64 = 8.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VoronoiCell {
    pub vertex: usize,
    pub bounded: bool,
    /// Counterclockwise cell polygon, present for bounded cells.
    pub polygon: Option<Vec<Point>>,
    pub area: Option<f64>,
}

/// Voronoi cell of every center.
///
/// A cell is bounded exactly when its site lies strictly inside the convex
/// hull of all sites. Bounded cells are clipped against sites within radius
/// 8 first; if the resulting cell reaches farther than half the search
/// radius from its site, the radius grows until no excluded site can cut it.
pub fn voronoi_cells(config: &PennyConfiguration) -> Vec<VoronoiCell> {
    let pts = config.points();
    let hull = convex_hull(pts);
    let (lo, hi) = bounding_box(pts);
    let diag = lo.dist(hi);
    let grid = SiteGrid::new(pts, SITE_RADIUS);
    (0..pts.len())
        .map(|v| {
            if !strictly_inside(&hull, pts[v]) {
                return VoronoiCell { vertex: v, bounded: false, polygon: None, area: None };
            }
            match bounded_cell(pts, &grid, v, diag) {
                Some(poly) => {
                    let area = polygon_area(&poly);
                    let polygon = poly.iter().map(|q| Point::new(q.x + pts[v].x, q.y + pts[v].y)).collect();
                    VoronoiCell { vertex: v, bounded: true, polygon: Some(polygon), area: Some(area) }
                }
                None => VoronoiCell { vertex: v, bounded: false, polygon: None, area: None },
            }
        })
        .collect()
}

/// Cell polygon relative to the site, or `None` if it cannot be closed
/// numerically (a site on the hull up to rounding).
fn bounded_cell(pts: &[Point], grid: &SiteGrid, v: usize, diag: f64) -> Option<Vec<Point>> {
    let p = pts[v];
    let all: Vec<usize> = (0..pts.len()).filter(|&w| w != v).collect();
    let mut radius = SITE_RADIUS;
    let mut half = 4.0 * (diag + SITE_RADIUS);
    loop {
        let mut sites: Vec<usize> = if radius >= diag {
            all.clone()
        } else {
            grid.near(&p, radius)
                .into_iter()
                .filter(|&w| w != v && p.dist(pts[w]) <= radius)
                .collect()
        };
        if sites.len() < 3 {
            sites = all.clone();
        }
        let using_all = sites.len() == all.len();
        sites.sort_by(|&a, &b| p.dist_sq(pts[a]).total_cmp(&p.dist_sq(pts[b])));
        let poly = clip_cell(p, sites.iter().map(|&w| pts[w]), half);
        if poly.len() < 3 {
            return None;
        }
        let touches_box = poly.iter().any(|q| q.x.abs().max(q.y.abs()) >= half * (1.0 - 1e-12));
        if touches_box {
            if !using_all {
                radius = diag;
                continue;
            }
            if half > 1e12 {
                return None;
            }
            half *= 16.0;
            continue;
        }
        let reach = poly.iter().map(|q| q.x.hypot(q.y)).fold(0.0, f64::max);
        if using_all || 2.0 * reach <= radius {
            return Some(poly);
        }
        radius = 2.0 * reach * (1.0 + 1e-9);
    }
}

/// Intersects the square of half-width `half` around `p` with the
/// half-planes closer to `p` than to each site. Coordinates relative to `p`.
fn clip_cell(p: Point, sites: impl Iterator<Item = Point>, half: f64) -> Vec<Point> {
    let mut poly = vec![
        Point::new(-half, -half),
        Point::new(half, -half),
        Point::new(half, half),
        Point::new(-half, half),
    ];
    for q in sites {
        let d = Point::new(q.x - p.x, q.y - p.y);
        let c = 0.5 * (d.x * d.x + d.y * d.y);
        let side = |a: &Point| a.x * d.x + a.y * d.y - c;
        let mut next = Vec::with_capacity(poly.len() + 1);
        for i in 0..poly.len() {
            let a = poly[i];
            let b = poly[(i + 1) % poly.len()];
            let fa = side(&a);
            let fb = side(&b);
            if fa <= 0.0 {
                next.push(a);
            }
            if (fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0) {
                let t = fa / (fa - fb);
                next.push(Point::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)));
            }
        }
        poly = next;
        if poly.is_empty() {
            break;
        }
    }
    poly
}

pub(crate) fn polygon_area(poly: &[Point]) -> f64 {
    let mut twice = 0.0;
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        twice += a.x * b.y - a.y * b.x;
    }
    0.5 * twice
}

fn bounding_box(pts: &[Point]) -> (Point, Point) {
    pts.iter().fold(
        (Point::new(f64::INFINITY, f64::INFINITY), Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY)),
        |(lo, hi), p| (Point::new(lo.x.min(p.x), lo.y.min(p.y)), Point::new(hi.x.max(p.x), hi.y.max(p.y))),
    )
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Counterclockwise hull without collinear points (monotone chain).
fn convex_hull(pts: &[Point]) -> Vec<Point> {
    let mut sorted: Vec<Point> = pts.to_vec();
    sorted.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    if sorted.len() < 3 {
        return sorted;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * sorted.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 {
            Box::new(sorted.iter())
        } else {
            Box::new(sorted.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn strictly_inside(hull: &[Point], p: Point) -> bool {
    if hull.len() < 3 {
        return false;
    }
    (0..hull.len()).all(|i| {
        let a = hull[i];
        let b = hull[(i + 1) % hull.len()];
        cross(a, b, p) > 1e-9 * a.dist(b)
    })
}
