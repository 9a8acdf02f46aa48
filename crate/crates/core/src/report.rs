//! Verification reports.
//!
//! [`verify_configuration`] and [`verify_graph`] run every applicable check
//! on one instance and collect a [`CheckRecord`] per check. A record is
//! *asserted* when its failure should fail the run. Penny-specific claims
//! are asserted only for point-set input; for a bare graph they are
//! reported but not asserted, since the graph need not be a penny graph.
//!
//! Face-based checks run per connected component and report the component
//! with the smallest margin.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coloring::{list_color, verify_coloring};
use crate::faces::{check_edge_bounds, extract_faces, BoundsReport, EdgeBound, DEFAULT_ISOPERIMETRIC_CONSTANT};
use crate::generators::{random_lists, InstanceSpec};
use crate::geometry::{
    tangency_graph, turning_angles_for_block, voronoi_cells, GeometryError, PennyConfiguration, DEFAULT_EPSILON,
    HEXAGON_AREA,
};
use crate::graph::{biconnected_components, degeneracy_order, diameter, find_triangle, low_degree_census, PennyGraph};
use crate::squaregraph::{squaregraph_bounds, validate_squaregraph, Squaregraph};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_SEED: u64 = 7;

/// Tolerance for angle and area comparisons.
pub const ANGLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    MinDistance,
    TriangleFree,
    Degeneracy,
    DegreeTwoCensus,
    AngularGap,
    VoronoiArea,
    TurningAngles,
    Euler,
    FaceLengths,
    BigFaceEdges,
    DiameterEdges,
    PennyEdges,
    OuterFaceSize,
    DiameterGrowth,
    ListColoring,
    Squaregraph,
}

impl CheckId {
    pub const ALL: [CheckId; 16] = [
        CheckId::MinDistance,
        CheckId::TriangleFree,
        CheckId::Degeneracy,
        CheckId::DegreeTwoCensus,
        CheckId::AngularGap,
        CheckId::VoronoiArea,
        CheckId::TurningAngles,
        CheckId::Euler,
        CheckId::FaceLengths,
        CheckId::BigFaceEdges,
        CheckId::DiameterEdges,
        CheckId::PennyEdges,
        CheckId::OuterFaceSize,
        CheckId::DiameterGrowth,
        CheckId::ListColoring,
        CheckId::Squaregraph,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::MinDistance => "min_distance",
            CheckId::TriangleFree => "triangle_free",
            CheckId::Degeneracy => "degeneracy",
            CheckId::DegreeTwoCensus => "degree_two_census",
            CheckId::AngularGap => "angular_gap",
            CheckId::VoronoiArea => "voronoi_area",
            CheckId::TurningAngles => "turning_angles",
            CheckId::Euler => "euler",
            CheckId::FaceLengths => "face_lengths",
            CheckId::BigFaceEdges => "big_face_edges",
            CheckId::DiameterEdges => "diameter_edges",
            CheckId::PennyEdges => "penny_edges",
            CheckId::OuterFaceSize => "outer_face_size",
            CheckId::DiameterGrowth => "diameter_growth",
            CheckId::ListColoring => "list_coloring",
            CheckId::Squaregraph => "squaregraph",
        }
    }

    /// The statement the check tests.
    pub fn anchor(self) -> &'static str {
        match self {
            CheckId::MinDistance => "centers scaled so the minimum distance is 2; tangency is distance 2",
            CheckId::TriangleFree => "triangle detection over later-neighbor pairs of a degeneracy order",
            CheckId::Degeneracy => "penny graphs are 3-degenerate and triangle-free penny graphs are 2-degenerate",
            CheckId::DegreeTwoCensus => {
                "a cyclic triangle-free penny graph has four non-articulation vertices of degree at most 2"
            }
            CheckId::AngularGap => "tangent neighbors of a penny are at least 60 degrees apart",
            CheckId::VoronoiArea => "every bounded Voronoi cell of a penny center has area at least 2√3",
            CheckId::TurningAngles => "boundary rays of a triangle-free block turn through 2π with four positive turns",
            CheckId::Euler => "n − e + f = 2 for each connected plane component",
            CheckId::FaceLengths => "face lengths sum to 2e and triangle-free bounded faces have length at least 4",
            CheckId::BigFaceEdges => "a triangle-free penny graph has at most 2n − k/2 − 2 edges",
            CheckId::DiameterEdges => "a connected triangle-free penny graph of diameter D has at most 2n − D − 2 edges",
            CheckId::PennyEdges => "an n-penny graph has at most ⌊3n − √(12n − 3)⌋ edges",
            CheckId::OuterFaceSize => "the outer face has at least √(2π√3·n) − C vertex incidences",
            CheckId::DiameterGrowth => "penny graph diameter grows like √n (D ≥ 0.5√n on grids)",
            CheckId::ListColoring => "triangle-free penny graphs are 3-choosable, colorable from lists in linear time",
            CheckId::Squaregraph => {
                "a squaregraph has at most ⌊2n − 2√n⌋ and 2n − D − 2 edges and, when cyclic, four low-degree vertices"
            }
        }
    }

    pub fn parse(s: &str) -> Option<CheckId> {
        CheckId::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// A number with its unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub key: String,
    pub value: f64,
    pub unit: String,
}

impl Quantity {
    pub fn new(key: &str, value: f64, unit: &str) -> Self {
        Self { key: key.into(), value, unit: unit.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub asserted: bool,
    pub measured: Vec<Quantity>,
    pub bounds: Vec<Quantity>,
    /// Distance to violation in the bound's unit; negative when violated.
    pub margin: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn new(id: &str, anchor: &str) -> Self {
        Self {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Skipped,
            asserted: false,
            measured: Vec::new(),
            bounds: Vec::new(),
            margin: None,
            detail: None,
        }
    }

    fn for_check(id: CheckId) -> Self {
        Self::new(id.as_str(), id.anchor())
    }

    pub fn measured(mut self, key: &str, value: f64, unit: &str) -> Self {
        self.measured.push(Quantity::new(key, value, unit));
        self
    }

    pub fn bound(mut self, key: &str, value: f64, unit: &str) -> Self {
        self.bounds.push(Quantity::new(key, value, unit));
        self
    }

    pub fn margin(mut self, margin: f64) -> Self {
        self.margin = Some(margin);
        self
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn asserted(mut self, asserted: bool) -> Self {
        self.asserted = asserted;
        self
    }

    pub fn outcome(mut self, pass: bool) -> Self {
        self.status = if pass { Status::Pass } else { Status::Fail };
        self
    }

    pub fn skipped(mut self, why: &str) -> Self {
        self.status = Status::Skipped;
        self.detail = Some(why.into());
        self
    }

    pub fn is_failure(&self) -> bool {
        self.asserted && self.status == Status::Fail
    }
}

/// What was verified.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum Source {
    Instance { instance: InstanceSpec },
    PointFile { path: String },
    GraphFile { edges: String, rotation: Option<String> },
    Suite { scale: String, instances: usize },
    Inline { label: String },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: f64,
    pub checks_ms: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Asserted checks that failed.
    pub asserted_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub spec: Source,
    pub version: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    pub timing: Timing,
}

impl VerificationReport {
    pub fn new(spec: Source, seed: u64, checks: Vec<CheckRecord>, timing: Timing) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Skipped => summary.skipped += 1,
            }
            if c.is_failure() {
                summary.asserted_failures += 1;
            }
        }
        Self { spec, version: TOOL_VERSION.into(), seed, checks, summary, timing }
    }

    /// No asserted check failed.
    pub fn passed(&self) -> bool {
        self.summary.asserted_failures == 0
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// The same report with every timing field cleared.
    pub fn without_timing(&self) -> Self {
        Self { timing: Timing::default(), ..self.clone() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub epsilon: f64,
    pub isoperimetric_constant: f64,
    pub seed: u64,
    /// Fail the run when the outer-face threshold does not hold.
    pub assert_outer_face: bool,
    /// Fail the run when D < 0.5√n.
    pub assert_diameter_growth: bool,
    /// Checks to run; `None` runs all applicable ones.
    pub checks: Option<Vec<CheckId>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            epsilon: DEFAULT_EPSILON,
            isoperimetric_constant: DEFAULT_ISOPERIMETRIC_CONSTANT,
            seed: DEFAULT_SEED,
            assert_outer_face: false,
            assert_diameter_growth: false,
            checks: None,
        }
    }
}

/// Builds the tangency graph and runs all selected checks.
pub fn verify_configuration(
    config: &PennyConfiguration,
    spec: Source,
    opts: &VerifyOptions,
) -> Result<VerificationReport, GeometryError> {
    let start = Instant::now();
    let g = tangency_graph(config)?;
    let mut report = run(&g, Some(config), spec, opts);
    report.timing.total_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Runs the combinatorial checks on a graph without coordinates.
pub fn verify_graph(g: &PennyGraph, spec: Source, opts: &VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let mut report = run(g, None, spec, opts);
    report.timing.total_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

struct Component {
    graph: PennyGraph,
    diameter: usize,
    bounds: Option<BoundsReport>,
    faces: Option<crate::faces::FaceStructure>,
}

struct Context<'a> {
    g: &'a PennyGraph,
    config: Option<&'a PennyConfiguration>,
    opts: &'a VerifyOptions,
    triangle: Option<[usize; 3]>,
    components: Vec<Component>,
}

impl Context<'_> {
    fn penny(&self) -> bool {
        self.config.is_some()
    }

    fn triangle_free(&self) -> bool {
        self.triangle.is_none()
    }
}

fn run(g: &PennyGraph, config: Option<&PennyConfiguration>, spec: Source, opts: &VerifyOptions) -> VerificationReport {
    let triangle = find_triangle(g);
    let components = g
        .components()
        .into_iter()
        .map(|comp| {
            let mut keep = vec![false; g.n()];
            comp.iter().for_each(|&v| keep[v] = true);
            let (graph, _) = g.induced_subgraph(&keep);
            let diameter = diameter(&graph).expect("component is connected");
            let faces = extract_faces(&graph).ok();
            let bounds = faces.as_ref().map(|fs| {
                check_edge_bounds(&graph, fs, Some(diameter), triangle.is_none(), opts.isoperimetric_constant)
            });
            Component { graph, diameter, bounds, faces }
        })
        .collect();
    let ctx = Context { g, config, opts, triangle, components };

    let selected = opts.checks.clone().unwrap_or_else(|| CheckId::ALL.to_vec());
    let mut checks = Vec::new();
    let mut timing = Timing::default();
    for id in CheckId::ALL.into_iter().filter(|id| selected.contains(id)) {
        let t = Instant::now();
        let record = run_check(id, &ctx);
        timing.checks_ms.insert(id.as_str().into(), t.elapsed().as_secs_f64() * 1e3);
        checks.push(record);
    }
    VerificationReport::new(spec, opts.seed, checks, timing)
}

fn run_check(id: CheckId, ctx: &Context) -> CheckRecord {
    let rec = CheckRecord::for_check(id);
    match id {
        CheckId::MinDistance => check_min_distance(rec, ctx),
        CheckId::TriangleFree => check_triangle(rec, ctx),
        CheckId::Degeneracy => check_degeneracy(rec, ctx),
        CheckId::DegreeTwoCensus => check_census(rec, ctx),
        CheckId::AngularGap => check_angular_gap(rec, ctx),
        CheckId::VoronoiArea => check_voronoi(rec, ctx),
        CheckId::TurningAngles => check_turning(rec, ctx),
        CheckId::Euler => check_euler(rec, ctx),
        CheckId::FaceLengths => check_face_lengths(rec, ctx),
        CheckId::BigFaceEdges => check_edge_bound(rec, ctx, |b| b.big_face.clone(), "2n − k/2 − 2"),
        CheckId::DiameterEdges => check_edge_bound(rec, ctx, |b| b.diameter_edges.clone(), "2n − D − 2"),
        CheckId::PennyEdges => check_penny_edges(rec, ctx),
        CheckId::OuterFaceSize => check_outer_face(rec, ctx),
        CheckId::DiameterGrowth => check_diameter_growth(rec, ctx),
        CheckId::ListColoring => check_list_coloring(rec, ctx),
        CheckId::Squaregraph => check_squaregraph(rec, ctx),
    }
}

fn check_min_distance(rec: CheckRecord, ctx: &Context) -> CheckRecord {
    let Some(config) = ctx.config else {
        return rec.skipped("no coordinates");
    };
    let Some((_, _, d)) = config.point_set().closest_pair() else {
        return rec.skipped("single penny");
    };
    let tol = 2.0 * config.epsilon();
    rec.measured("min_distance", d, "length (disk radius = 1)")
        .measured("exact_frame", f64::from(u8::from(config.is_exact())), "flag")
        .bound("target", 2.0, "length (disk radius = 1)")
        .margin(tol - (d - 2.0).abs())
        .asserted(true)
        .outcome((d - 2.0).abs() <= tol)
}

fn check_triangle(rec: CheckRecord, ctx: &Context) -> CheckRecord {
    let rec = rec.measured("triangle_free", f64::from(u8::from(ctx.triangle_free())), "flag");
    let rec = match ctx.triangle {
        Some(t) => rec.detail(format!("triangle {t:?}")),
        None => rec,
    };
    rec.outcome(true)
}

fn check_degeneracy(rec: CheckRecord, ctx: &Context) -> CheckRecord {
    let d = degeneracy_order(ctx.g).degeneracy;
    let bound = if ctx.triangle_free() { 2 } else { 3 };
    rec.measured("degeneracy", d as f64, "vertices")
        .bound("max_degeneracy", bound as f64, "vertices")
        .margin(bound as f64 - d as f64)
        .asserted(ctx.penny())
        .outcome(d <= bound)
}

fn check_census(rec: CheckRecord, ctx: &Context) -> CheckRecord {
    let Ok(census) = low_degree_census(ctx.g) else {
        return rec.skipped("graph has a triangle");
    };
    let low = census.non_articulation_low_degree.len();
    let min_block = census.min_block_degree_two();
    let pass = !census.has_cycle || (low >= 4 && min_block.is_none_or(|m| m >= 4));
    let mut rec = rec
        .measured("has_cycle", f64::from(u8::from(census.has_cycle)), "flag")
        .measured("non_articulation_low_degree", low as f64, "vertices")
        .measured("nontrivial_blocks", census.blocks.len() as f64, "blocks");
    if let Some(m) = min_block {
        rec = rec.measured("min_block_degree_two", m as f64, "vertices");
    }
    let margin = if census.has_cycle { low.min(min_block.unwrap_or(low)) as f64 - 4.0 } else { 0.0 };
    rec.bound("min_count", 4.0, "vertices")
        .margin(margin)
        .asserted(ctx.penny())
        .outcome(pass)
}

fn check_angular_gap(rec: CheckRecord, ctx: &Context) -> CheckRecord {
    let Some(rot) = ctx.g.rotation().filter(|r| r.angles(0).is_some()) else {
        return rec.skipped("no geometric rotation");
    };
    let gap = (0..ctx.g.n()).filter_map(|v| rot.min_angular_gap(v)).fold(f64::INFINITY, f64::min);
    if gap.is_infinite() {
        return rec.skipped("no vertex of degree at least 2");
    }
    let tol = 10.0 * ctx.opts.epsilon + ANGLE_TOLERANCE;
    rec.measured("min_gap", gap, "radians")
        .bound("min_gap", PI / 3.0, "radians")
        .margin(gap - PI / 3.0)
        .asserted(ctx.penny())
        .outcome(gap >= PI / 3.0 - tol)
}

fn check_voronoi(rec: CheckRecord, ctx: &Context) -> CheckRecord {
    let Some(config) = ctx.config else {
        return rec.skipped("no coordinates");
    };
    let areas: Vec<f64> = voronoi_cells(config).iter().filter_map(|c| c.area).collect();
    let min = areas.iter().copied().fold(f64::INFINITY, f64::min);
    let rec = rec
        .measured("bounded_cells", areas.len() as f64, "cells")
        .bound("min_area", HEXAGON_AREA, "area (disk radius = 1)");
    if areas.is_empty() {
        return rec.asserted(true).outcome(true);
    }
    rec.measured("min_area", min, "area (disk radius = 1)")
        .margin(min - HEXAGON_AREA)
        .asserted(true)
        .outcome(min >= HEXAGON_AREA - ANGLE_TOLERANCE)
}

fn check_turning(rec: CheckRecord, ctx: &Context) -> CheckRecord {
    if !ctx.triangle_free() {
        return rec.skipped("graph has a triangle");
    }
    let Some(config) = ctx.config else {
        return rec.skipped("no coordinates");
    };
    let dec = biconnected_components(ctx.g);
    let mut blocks = 0usize;
    let mut worst_sum = 0.0f64;
    let mut min_positive = usize::MAX;
    let mut max_high = f64::NEG_INFINITY;
    let mut max_two = f64::NEG_INFINITY;
    let mut violations = Vec::new();
    for i in dec.nontrivial_blocks() {
        let trace = match turning_angles_for_block(config, ctx.g, &dec.components[i]) {
            Ok(t) => t,
            Err(e) => return rec.detail(format!("block {i}: {e}")).asserted(true).outcome(false),
        };
        blocks += 1;
        worst_sum = worst_sum.max((trace.sum - TAU).abs());
        min_positive = min_positive.min(trace.positive_count());
        for (&a, &d) in trace.angles.iter().zip(&trace.degrees) {
            if d >= 3 {
                max_high = max_high.max(a);
            } else if d == 2 {
                max_two = max_two.max(a);
            }
        }
        violations.extend(trace.violations(ANGLE_TOLERANCE).into_iter().map(|v| format!("block {i}: {v:?}")));
    }
    let mut rec = rec.measured("blocks", blocks as f64, "blocks");
    if blocks == 0 {
        return rec.asserted(true).outcome(true);
    }
    rec = rec
        .measured("max_sum_error", worst_sum, "radians")
        .measured("min_positive_turns", min_positive as f64, "angles")
        .bound("sum", TAU, "radians")
        .bound("sum_tolerance", ANGLE_TOLERANCE, "radians")
        .bound("degree_two_cap", 2.0 * PI / 3.0, "radians")
        .margin(ANGLE_TOLERANCE - worst_sum);
    if max_high.is_finite() {
        rec = rec.measured("max_angle_degree_three_plus", max_high, "radians");
    }
    if max_two.is_finite() {
        rec = rec.measured("max_angle_degree_two", max_two, "radians");
    }
    if let Some(first) = violations.first() {
        rec = rec.detail(first.clone());
    }
    rec.asserted(true).outcome(violations.is_empty())
}

fn check_euler(rec: CheckRecord, ctx: &Context) -> CheckRecord {
    if ctx.g.rotation().is_none() {
        return rec.skipped("no rotation system");
    }
    let mut bad = None;
    let mut total_faces = 0;
    for (i, c) in ctx.components.iter().enumerate() {
        let f = c.faces.as_ref().map_or(0, |fs| fs.face_count());
        total_faces += f;
        let chi = c.graph.n() as i64 - c.graph.edge_count() as i64 + f as i64;
        if chi != 2 {
            bad.get_or_insert(format!("component {i}: n − e + f = {chi}"));
        }
    }
    let rec = rec
        .measured("faces", total_faces as f64, "faces")
        .measured("components", ctx.components.len() as f64, "components")
        .bound("euler_characteristic", 2.0, "per component");
    let pass = bad.is_none();
    let rec = match bad {
        Some(d) => rec.detail(d),
        None => rec,
    };
    rec.asserted(true).outcome(pass)
}

fn check_face_lengths(rec: CheckRecord, ctx: &Context) -> CheckRecord {
    if ctx.g.rotation().is_none() {
        return rec.skipped("no rotation system");
    }
    let mut incidences = 0;
    let mut shortest_bounded = usize::MAX;
    for c in &ctx.components {
        if let Some(fs) = &c.faces {
            incidences += fs.lengths().iter().sum::<usize>();
            for i in fs.bounded_faces() {
                shortest_bounded = shortest_bounded.min(fs.length(i));
            }
        }
    }
    let sum_ok = incidences == 2 * ctx.g.edge_count();
    let girth_ok = !ctx.triangle_free() || shortest_bounded == usize::MAX || shortest_bounded >= 4;
    let mut rec = rec
        .measured("face_incidences", incidences as f64, "edge-face incidences")
        .bound("twice_edges", 2.0 * ctx.g.edge_count() as f64, "edge-face incidences");
    if shortest_bounded != usize::MAX {
        rec = rec.measured("shortest_bounded_face", shortest_bounded as f64, "edges");
    }
    rec.asserted(true).outcome(sum_ok && girth_ok)
}

fn worst_component<'a>(
    ctx: &'a Context,
    pick: impl Fn(&BoundsReport) -> Option<EdgeBound>,
) -> Option<(&'a Component, EdgeBound)> {
    ctx.components
        .iter()
        .filter_map(|c| c.bounds.as_ref().and_then(&pick).map(|b| (c, b)))
        .min_by(|a, b| a.1.margin.total_cmp(&b.1.margin))
}

fn check_edge_bound(
    rec: CheckRecord,
    ctx: &Context,
    pick: impl Fn(&BoundsReport) -> Option<EdgeBound>,
    formula: &str,
) -> CheckRecord {
    if !ctx.triangle_free() {
        return rec.skipped("graph has a triangle");
    }
    if ctx.g.rotation().is_none() {
        return rec.skipped("no rotation system");
    }
    let Some((c, b)) = worst_component(ctx, pick) else {
        return rec.skipped("no embedded component");
    };
    let r = c.bounds.as_ref().expect("picked from bounds");
    rec.measured("n", r.n as f64, "vertices")
        .measured("e", b.edges as f64, "edges")
        .measured("k", r.k as f64, "vertex-face incidences")
        .measured("diameter", c.diameter as f64, "edges")
        .measured("tight", f64::from(u8::from(b.tight)), "flag")
        .bound(formula, b.bound, "edges")
        .margin(b.margin)
        .asserted(ctx.penny())
        .outcome(b.pass)
}

fn check_penny_edges(rec: CheckRecord, ctx: &Context) -> CheckRecord {
    let n = ctx.g.n();
    let e = ctx.g.edge_count();
    let bound = crate::faces::penny_edge_bound(n);
    rec.measured("n", n as f64, "vertices")
        .measured("e", e as f64, "edges")
        .measured("tight", f64::from(u8::from(e as i64 == bound)), "flag")
        .bound("⌊3n − √(12n − 3)⌋", bound as f64, "edges")
        .margin((bound - e as i64) as f64)
        .asserted(ctx.penny())
        .outcome(e as i64 <= bound)
}

fn check_outer_face(rec: CheckRecord, ctx: &Context) -> CheckRecord {
    let Some(c) = ctx
        .components
        .iter()
        .filter(|c| c.bounds.is_some())
        .min_by(|a, b| {
            let m = |c: &Component| c.bounds.as_ref().map_or(f64::INFINITY, |r| r.isoperimetric.margin);
            m(a).total_cmp(&m(b))
        })
    else {
        return rec.skipped("no rotation system");
    };
    let r = c.bounds.as_ref().expect("filtered");
    let iso = &r.isoperimetric;
    let mut rec = rec
        .measured("n", r.n as f64, "vertices")
        .measured("k", iso.k as f64, "vertex-face incidences")
        .bound("√(2π√3·n) − C", iso.threshold, "vertex-face incidences")
        .bound("C", iso.constant, "vertex-face incidences")
        .margin(iso.margin);
    if let Some(eb) = r.isoperimetric_edge_bound {
        rec = rec.measured("implied_edge_bound", eb, "edges");
    }
    rec.asserted(ctx.penny() && ctx.opts.assert_outer_face).outcome(iso.pass)
}

fn check_diameter_growth(rec: CheckRecord, ctx: &Context) -> CheckRecord {
    if ctx.components.len() != 1 {
        return rec.skipped("graph is disconnected");
    }
    let d = ctx.components[0].diameter as f64;
    let root = (ctx.g.n() as f64).sqrt();
    rec.measured("diameter", d, "edges")
        .measured("diameter_over_sqrt_n", d / root, "ratio")
        .bound("min_ratio", 0.5, "ratio")
        .margin(d / root - 0.5)
        .asserted(ctx.penny() && ctx.opts.assert_diameter_growth)
        .outcome(d >= 0.5 * root)
}

fn check_list_coloring(rec: CheckRecord, ctx: &Context) -> CheckRecord {
    if !ctx.triangle_free() {
        return rec.skipped("graph has a triangle");
    }
    let lists = random_lists(ctx.g.n(), 3, 6, ctx.opts.seed).expect("3 of 6 colors");
    let size = (ctx.g.n() + ctx.g.edge_count()).max(1) as f64;
    let rec = rec.bound("list_size", 3.0, "colors").bound("universe", 6.0, "colors");
    match list_color(ctx.g, &lists) {
        Ok(res) => {
            let verified = verify_coloring(ctx.g, &lists, &res.colors);
            let rec = rec
                .measured("ops", res.ops as f64, "primitive operations")
                .measured("ops_per_size", res.ops as f64 / size, "operations per (n + e)")
                .measured("core", res.core.len() as f64, "vertices")
                .measured("max_colored_neighbors", res.max_colored_neighbors as f64, "vertices");
            let rec = match &verified {
                Err(v) => rec.detail(v.to_string()),
                Ok(()) => rec,
            };
            rec.asserted(ctx.penny()).outcome(verified.is_ok())
        }
        Err(e) => rec.detail(e.to_string()).asserted(ctx.penny()).outcome(false),
    }
}

fn check_squaregraph(rec: CheckRecord, ctx: &Context) -> CheckRecord {
    if ctx.components.len() != 1 {
        return rec.skipped("graph is disconnected");
    }
    let Ok(validation) = validate_squaregraph(ctx.g) else {
        return rec.skipped("no rotation system");
    };
    if !validation.valid {
        return rec.skipped("not a squaregraph");
    }
    let sq = Squaregraph::new(ctx.g.clone()).expect("validated");
    let r = squaregraph_bounds(&sq);
    let s = r.squaregraph.as_ref().expect("squaregraph extension");
    let de = r.diameter_edges.as_ref().map_or(true, |b| b.pass);
    rec.measured("n", r.n as f64, "vertices")
        .measured("e", r.e as f64, "edges")
        .measured("non_articulation_low_degree", s.non_articulation_degree_two as f64, "vertices")
        .measured("crossings", s.arrangement.crossings as f64, "crossings")
        .measured("lines", s.arrangement.lines as f64, "lines")
        .bound("⌊2n − 2√n⌋", s.grid_bound.bound, "edges")
        .bound("turan_limit", s.arrangement.turan_limit as f64, "crossings")
        .margin(s.grid_bound.margin)
        .asserted(true)
        .outcome(s.grid_bound.pass && de && s.degree_two_pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cycle, gen_grid, gen_hex_packing};
    use crate::geometry::{normalize, Point, PointSet};

    fn verify(config: &PennyConfiguration) -> VerificationReport {
        verify_configuration(config, Source::Inline { label: "test".into() }, &VerifyOptions::default()).unwrap()
    }

    #[test]
    fn grid_passes_everything() {
        let r = verify(&gen_grid(3).unwrap());
        assert!(r.passed(), "{r:#?}");
        for id in ["big_face_edges", "diameter_edges", "squaregraph"] {
            let c = r.check(id).unwrap();
            assert_eq!(c.status, Status::Pass);
            assert_eq!(c.margin, Some(0.0), "{id}");
        }
        let e = r.check("penny_edges").unwrap();
        assert_eq!(e.measured[1].value, 12.0);
        assert_eq!(r.summary.failed, 0);
    }

    #[test]
    fn triangle_skips_triangle_free_checks() {
        let t = normalize(
            &PointSet::new(vec![Point::new(0.0, 0.0), Point::new(2.0, 0.0), Point::new(1.0, 3f64.sqrt())]),
            DEFAULT_EPSILON,
        )
        .unwrap();
        let r = verify(&t);
        assert!(r.passed());
        for id in ["degree_two_census", "turning_angles", "big_face_edges", "diameter_edges", "list_coloring"] {
            assert_eq!(r.check(id).unwrap().status, Status::Skipped, "{id}");
        }
        let p = r.check("penny_edges").unwrap();
        assert_eq!(p.bounds[0].value, 3.0);
        assert_eq!(p.status, Status::Pass);
    }

    #[test]
    fn hex_is_tight_for_the_general_bound() {
        let r = verify(&gen_hex_packing(2).unwrap());
        assert!(r.passed());
        assert_eq!(r.check("penny_edges").unwrap().margin, Some(0.0));
    }

    #[test]
    fn non_penny_graph_is_not_asserted() {
        // K4 is not a penny graph
        let k4 = PennyGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let r = verify_graph(&k4, Source::Inline { label: "k4".into() }, &VerifyOptions::default());
        let d = r.check("degeneracy").unwrap();
        assert_eq!(d.status, Status::Pass);
        let five = PennyGraph::from_edges(5, &(0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect::<Vec<_>>())
            .unwrap();
        let r = verify_graph(&five, Source::Inline { label: "k5".into() }, &VerifyOptions::default());
        let d = r.check("degeneracy").unwrap();
        assert_eq!(d.status, Status::Fail);
        assert!(!d.asserted);
        assert!(r.passed());
    }

    #[test]
    fn check_selection_and_round_trip() {
        let opts = VerifyOptions { checks: Some(vec![CheckId::Euler, CheckId::Degeneracy]), ..Default::default() };
        let r = verify_configuration(&gen_cycle(7).unwrap(), Source::Inline { label: "c7".into() }, &opts).unwrap();
        let ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, vec!["degeneracy", "euler"]);
        let json = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn check_ids_parse() {
        for id in CheckId::ALL {
            assert_eq!(CheckId::parse(id.as_str()), Some(id));
        }
        assert_eq!(CheckId::parse("nope"), None);
    }
}
