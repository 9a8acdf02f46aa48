//! The full verification battery over the generated families.
//!
//! Instances are verified in parallel and the results are aggregated in
//! input order, so the report depends only on the seed and scale.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{choosability_oracle, exhaustive_coloring, list_color};
use crate::faces::{grid_edge_bound, DEFAULT_ISOPERIMETRIC_CONSTANT};
use crate::generators::{gen_cycle, random_corpus, random_lists, Family, InstanceSpec};
use crate::geometry::{tangency_graph, voronoi_cells, Point, DEFAULT_EPSILON, HEXAGON_AREA};
use crate::graph::{degeneracy_order, PennyGraph};
use crate::report::{
    verify_configuration, CheckRecord, Source, Status, Timing, VerificationReport, VerifyOptions,
};
use crate::squaregraph::{squaregraph_bounds, tight_squaregraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Small,
    Full,
}

impl Scale {
    pub fn as_str(self) -> &'static str {
        match self {
            Scale::Small => "small",
            Scale::Full => "full",
        }
    }

    fn max_grid(self) -> usize {
        match self {
            Scale::Small => 12,
            Scale::Full => 30,
        }
    }

    fn random_instances(self) -> usize {
        match self {
            Scale::Small => 100,
            Scale::Full => 1000,
        }
    }

    fn max_rings(self) -> usize {
        match self {
            Scale::Small => 3,
            Scale::Full => 5,
        }
    }

    fn max_squaregraph(self) -> usize {
        match self {
            Scale::Small => 60,
            Scale::Full => 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    pub scale: Scale,
    pub seed: u64,
    pub epsilon: f64,
    pub isoperimetric_constant: f64,
}

impl SuiteOptions {
    pub fn new(scale: Scale, seed: u64) -> Self {
        Self { scale, seed, epsilon: DEFAULT_EPSILON, isoperimetric_constant: DEFAULT_ISOPERIMETRIC_CONSTANT }
    }
}

/// Ratio cap for the linear-work fit.
pub const OPS_RESIDUAL_LIMIT: f64 = 1.25;

/// Constants of the property form of the outer-face bound on grids.
pub const GRID_FACE_SLOPE: f64 = 3.3;
pub const GRID_FACE_OFFSET: f64 = 12.0;

/// The instance list for a scale: grids, hex packings, the seeded random
/// corpus, and the tight squaregraphs.
pub fn corpus(scale: Scale, seed: u64) -> Vec<InstanceSpec> {
    let mut out: Vec<InstanceSpec> = (2..=scale.max_grid()).map(InstanceSpec::grid).collect();
    out.extend((1..=scale.max_rings()).map(InstanceSpec::hex_packing));
    out.extend(random_corpus(scale.random_instances(), seed));
    out.extend((1..=scale.max_squaregraph()).map(InstanceSpec::squaregraph_tight));
    out
}

struct Outcome {
    spec: InstanceSpec,
    report: Result<VerificationReport, String>,
    n: usize,
    e: usize,
    triangle_free: bool,
    degeneracy: usize,
    ground_truth: Vec<String>,
    /// For n ≤ 10: did `list_color` and exhaustive search agree on the
    /// seeded 3-lists?
    oracle_agrees: Option<bool>,
    center_area: Option<f64>,
}

fn analyze(spec: InstanceSpec, opts: &SuiteOptions, index: usize) -> Outcome {
    let mut out = Outcome {
        spec: spec.clone(),
        report: Err(String::new()),
        n: 0,
        e: 0,
        triangle_free: false,
        degeneracy: 0,
        ground_truth: Vec::new(),
        oracle_agrees: None,
        center_area: None,
    };
    let config = match spec.build() {
        Ok(c) => c,
        Err(e) => {
            out.report = Err(format!("{}: {e}", spec.label()));
            return out;
        }
    };
    let instance_seed = opts.seed.wrapping_add(index as u64);
    let vopts = VerifyOptions {
        epsilon: opts.epsilon,
        isoperimetric_constant: opts.isoperimetric_constant,
        seed: instance_seed,
        ..VerifyOptions::default()
    };
    out.report = verify_configuration(&config, Source::Instance { instance: spec.clone() }, &vopts)
        .map_err(|e| format!("{}: {e}", spec.label()));
    out.ground_truth = spec.check(&config).unwrap_or_else(|e| vec![e.to_string()]);
    let Ok(g) = tangency_graph(&config) else {
        return out;
    };
    out.n = g.n();
    out.e = g.edge_count();
    out.triangle_free = crate::graph::find_triangle(&g).is_none();
    out.degeneracy = degeneracy_order(&g).degeneracy;
    if out.triangle_free && g.n() <= 10 {
        let lists = random_lists(g.n(), 3, 6, instance_seed).expect("3 of 6 colors");
        let ours = list_color(&g, &lists).is_ok();
        let oracle = exhaustive_coloring(&g, &lists).is_some();
        out.oracle_agrees = Some(ours == oracle);
    }
    if matches!(spec.family, Family::HexPacking { rings: 1 }) {
        out.center_area = voronoi_cells(&config)
            .iter()
            .find(|c| config.points()[c.vertex].dist(Point::new(0.0, 0.0)) < 1e-12)
            .and_then(|c| c.area);
    }
    out
}

/// Runs the battery and returns one record per criterion.
pub fn run_suite(opts: &SuiteOptions) -> VerificationReport {
    let start = Instant::now();
    let specs = corpus(opts.scale, opts.seed);
    let total = specs.len();
    let outcomes: Vec<Outcome> = specs
        .into_par_iter()
        .enumerate()
        .map(|(i, s)| analyze(s, opts, i))
        .collect();
    let mut timing = Timing::default();
    timing.checks_ms.insert("instances".into(), start.elapsed().as_secs_f64() * 1e3);

    type Criterion = fn(&[Outcome], &SuiteOptions) -> CheckRecord;
    let criteria: [(&str, Criterion); 12] = [
        ("corpus", corpus_record),
        ("grid_edge_formula", grid_edge_formula),
        ("degeneracy", degeneracy_record),
        ("degree_two", degree_two_record),
        ("list_coloring", list_coloring_record),
        ("linear_work", linear_work_record),
        ("voronoi_area", voronoi_record),
        ("turning_angles", turning_record),
        ("edge_bounds", edge_bounds_record),
        ("outer_face", outer_face_record),
        ("diameter", diameter_record),
        ("squaregraph", squaregraph_record),
    ];
    let mut checks = Vec::new();
    for (name, f) in criteria {
        let t = Instant::now();
        checks.push(f(&outcomes, opts));
        timing.checks_ms.insert(name.into(), t.elapsed().as_secs_f64() * 1e3);
    }
    timing.total_ms = start.elapsed().as_secs_f64() * 1e3;
    VerificationReport::new(
        Source::Suite { scale: opts.scale.as_str().into(), instances: total },
        opts.seed,
        checks,
        timing,
    )
}

fn reports(outcomes: &[Outcome]) -> impl Iterator<Item = (&Outcome, &VerificationReport)> {
    outcomes.iter().filter_map(|o| o.report.as_ref().ok().map(|r| (o, r)))
}

/// Counts instance-level records of `id` by status and keeps the first
/// failure.
fn tally(outcomes: &[Outcome], id: &str, filter: impl Fn(&Outcome) -> bool) -> (usize, usize, Option<String>) {
    let mut checked = 0;
    let mut failed = 0;
    let mut first = None;
    for (o, r) in reports(outcomes).filter(|(o, _)| filter(o)) {
        let Some(c) = r.check(id) else { continue };
        match c.status {
            Status::Skipped => {}
            Status::Pass => checked += 1,
            Status::Fail => {
                checked += 1;
                failed += 1;
                first.get_or_insert_with(|| {
                    format!("{}: {}", o.spec.label(), c.detail.clone().unwrap_or_else(|| format!("margin {:?}", c.margin)))
                });
            }
        }
    }
    (checked, failed, first)
}

fn with_detail(rec: CheckRecord, detail: Option<String>) -> CheckRecord {
    match detail {
        Some(d) => rec.detail(d),
        None => rec,
    }
}

fn is_grid(o: &Outcome) -> Option<usize> {
    match o.spec.family {
        Family::Grid { m } => Some(m),
        _ => None,
    }
}

fn corpus_record(outcomes: &[Outcome], _: &SuiteOptions) -> CheckRecord {
    let broken: Vec<String> = outcomes
        .iter()
        .filter_map(|o| match &o.report {
            Err(e) => Some(e.clone()),
            Ok(_) if !o.ground_truth.is_empty() => Some(format!("{}: {}", o.spec.label(), o.ground_truth.join("; "))),
            Ok(_) => None,
        })
        .collect();
    let rec = CheckRecord::new("corpus", "every generated instance is valid and matches its declared ground truth")
        .measured("instances", outcomes.len() as f64, "instances")
        .measured("max_n", outcomes.iter().map(|o| o.n).max().unwrap_or(0) as f64, "vertices")
        .measured("broken", broken.len() as f64, "instances")
        .asserted(true)
        .outcome(broken.is_empty());
    with_detail(rec, broken.into_iter().next())
}

fn grid_edge_formula(outcomes: &[Outcome], _: &SuiteOptions) -> CheckRecord {
    let mut count = 0;
    let mut bad = None;
    for o in outcomes {
        if let Some(m) = is_grid(o) {
            count += 1;
            let formula = 2 * m * (m - 1);
            if o.e != formula || o.e as i64 != grid_edge_bound(o.n) {
                bad.get_or_insert(format!("m = {m}: e = {}", o.e));
            }
        }
    }
    let rec = CheckRecord::new("grid_edge_formula", "the m×m grid has exactly ⌊2n − 2√n⌋ = 2m(m − 1) edges")
        .measured("grids", count as f64, "instances")
        .asserted(true)
        .outcome(bad.is_none() && count > 0);
    with_detail(rec, bad)
}

fn degeneracy_record(outcomes: &[Outcome], _: &SuiteOptions) -> CheckRecord {
    let tf_max = outcomes.iter().filter(|o| o.triangle_free).map(|o| o.degeneracy).max().unwrap_or(0);
    let all_max = outcomes.iter().map(|o| o.degeneracy).max().unwrap_or(0);
    let hex_max = outcomes
        .iter()
        .filter(|o| matches!(o.spec.family, Family::HexPacking { .. }))
        .map(|o| o.degeneracy)
        .max()
        .unwrap_or(0);
    CheckRecord::new("degeneracy", "triangle-free penny graphs are 2-degenerate; penny graphs are 3-degenerate")
        .measured("max_triangle_free", tf_max as f64, "vertices")
        .measured("max_hex_packing", hex_max as f64, "vertices")
        .measured("max_any", all_max as f64, "vertices")
        .bound("triangle_free", 2.0, "vertices")
        .bound("general", 3.0, "vertices")
        .margin((2.0 - tf_max as f64).min(3.0 - all_max as f64))
        .asserted(true)
        .outcome(tf_max <= 2 && all_max <= 3)
}

fn degree_two_record(outcomes: &[Outcome], _: &SuiteOptions) -> CheckRecord {
    let (checked, failed, first) = tally(outcomes, "degree_two_census", |_| true);
    let rec = CheckRecord::new(
        "degree_two",
        "cyclic triangle-free penny graphs have four non-articulation vertices of degree at most 2, and each nontrivial block four degree-2 vertices",
    )
    .measured("instances", checked as f64, "instances")
    .measured("violations", failed as f64, "instances")
    .asserted(true)
    .outcome(failed == 0);
    with_detail(rec, first)
}

fn list_coloring_record(outcomes: &[Outcome], _: &SuiteOptions) -> CheckRecord {
    let (checked, failed, first) = tally(outcomes, "list_coloring", |_| true);
    let oracle: Vec<bool> = outcomes.iter().filter_map(|o| o.oracle_agrees).collect();
    let disagreements = oracle.iter().filter(|&&a| !a).count();
    let c5 = gen_cycle(5).ok().and_then(|c| tangency_graph(&c).ok());
    let (two, three) = match &c5 {
        Some(g) => (choosable(g, 2), choosable(g, 3)),
        None => (None, None),
    };
    let c5_ok = two == Some(false) && three == Some(true);
    let rec = CheckRecord::new("list_coloring", "triangle-free penny graphs are 3-choosable; C5 is 3- but not 2-choosable")
        .measured("instances", checked as f64, "instances")
        .measured("failures", failed as f64, "instances")
        .measured("oracle_comparisons", oracle.len() as f64, "instances")
        .measured("oracle_disagreements", disagreements as f64, "instances")
        .measured("c5_two_choosable", two.map_or(-1.0, |b| f64::from(u8::from(b))), "flag")
        .measured("c5_three_choosable", three.map_or(-1.0, |b| f64::from(u8::from(b))), "flag")
        .asserted(true)
        .outcome(failed == 0 && disagreements == 0 && c5_ok && checked > 0);
    with_detail(rec, first)
}

fn choosable(g: &PennyGraph, k: usize) -> Option<bool> {
    choosability_oracle(g, k).ok().map(|c| c.choosable)
}

/// Least-squares fit of ops ≈ C·(n + e) through the origin over the grids,
/// and the largest ratio of measured to fitted work.
pub fn fit_linear_work(samples: &[(f64, f64)]) -> (f64, f64) {
    let sxy: f64 = samples.iter().map(|(x, y)| x * y).sum();
    let sxx: f64 = samples.iter().map(|(x, _)| x * x).sum();
    let c = sxy / sxx;
    let worst = samples.iter().map(|(x, y)| y / (c * x)).fold(0.0, f64::max);
    (c, worst)
}

fn linear_work_record(outcomes: &[Outcome], _: &SuiteOptions) -> CheckRecord {
    let samples: Vec<(f64, f64)> = outcomes
        .iter()
        .filter(|o| is_grid(o).is_some_and(|m| m >= 3))
        .filter_map(|o| {
            let r = o.report.as_ref().ok()?;
            let c = r.check("list_coloring")?;
            let ops = c.measured.iter().find(|q| q.key == "ops")?.value;
            Some(((o.n + o.e) as f64, ops))
        })
        .collect();
    let rec = CheckRecord::new("linear_work", "list coloring does O(n + e) primitive operations")
        .measured("grids", samples.len() as f64, "instances")
        .bound("max_ratio", OPS_RESIDUAL_LIMIT, "ratio");
    if samples.len() < 2 {
        return rec.detail("too few grids").asserted(true).outcome(false);
    }
    let (c, worst) = fit_linear_work(&samples);
    rec.measured("fitted_constant", c, "operations per (n + e)")
        .measured("max_ratio", worst, "ratio")
        .margin(OPS_RESIDUAL_LIMIT - worst)
        .asserted(true)
        .outcome(worst <= OPS_RESIDUAL_LIMIT)
}

fn voronoi_record(outcomes: &[Outcome], _: &SuiteOptions) -> CheckRecord {
    let (checked, failed, first) = tally(outcomes, "voronoi_area", |_| true);
    let min_area = reports(outcomes)
        .filter_map(|(_, r)| r.check("voronoi_area"))
        .filter_map(|c| c.measured.iter().find(|q| q.key == "min_area").map(|q| q.value))
        .fold(f64::INFINITY, f64::min);
    let center = outcomes.iter().find_map(|o| o.center_area);
    let center_ok = center.is_some_and(|a| (a - HEXAGON_AREA).abs() <= 1e-9);
    let mut rec = CheckRecord::new("voronoi_area", "bounded Voronoi cells have area at least 2√3, with equality in the hexagonal flower")
        .measured("instances", checked as f64, "instances")
        .measured("violations", failed as f64, "instances")
        .bound("min_area", HEXAGON_AREA, "area (disk radius = 1)");
    if min_area.is_finite() {
        rec = rec.measured("min_area", min_area, "area (disk radius = 1)").margin(min_area - HEXAGON_AREA);
    }
    if let Some(a) = center {
        rec = rec.measured("flower_center_area", a, "area (disk radius = 1)");
    }
    with_detail(rec.asserted(true).outcome(failed == 0 && center_ok), first)
}

fn turning_record(outcomes: &[Outcome], _: &SuiteOptions) -> CheckRecord {
    let (checked, failed, first) = tally(outcomes, "turning_angles", |_| true);
    let blocks: f64 = reports(outcomes)
        .filter_map(|(_, r)| r.check("turning_angles"))
        .filter_map(|c| c.measured.iter().find(|q| q.key == "blocks").map(|q| q.value))
        .sum();
    let rec = CheckRecord::new("turning_angles", "boundary rays of every triangle-free block turn through 2π with four positive turns")
        .measured("instances", checked as f64, "instances")
        .measured("blocks", blocks, "blocks")
        .measured("violations", failed as f64, "instances")
        .asserted(true)
        .outcome(failed == 0);
    with_detail(rec, first)
}

fn edge_bounds_record(outcomes: &[Outcome], _: &SuiteOptions) -> CheckRecord {
    let mut failures = 0;
    let mut first = None;
    for id in ["big_face_edges", "diameter_edges", "penny_edges"] {
        let (_, f, d) = tally(outcomes, id, |_| true);
        failures += f;
        if first.is_none() {
            first = d.map(|d| format!("{id}: {d}"));
        }
    }
    let hex: Vec<&Outcome> = outcomes.iter().filter(|o| matches!(o.spec.family, Family::HexPacking { .. })).collect();
    let hex_tight = hex.iter().all(|o| o.e as i64 == crate::faces::penny_edge_bound(o.n));
    let implied = reports(outcomes)
        .filter_map(|(o, r)| {
            let c = r.check("outer_face_size")?;
            let eb = c.measured.iter().find(|q| q.key == "implied_edge_bound")?.value;
            (c.status == Status::Pass).then_some((o.e as f64) <= eb + 1e-9)
        })
        .collect::<Vec<bool>>();
    let rec = CheckRecord::new("edge_bounds", "e ≤ 2n − k/2 − 2 and e ≤ 2n − D − 2 when triangle-free; e ≤ ⌊3n − √(12n − 3)⌋ always, tight on hexagons")
        .measured("violations", failures as f64, "checks")
        .measured("hex_packings", hex.len() as f64, "instances")
        .measured("hex_tight", f64::from(u8::from(hex_tight)), "flag")
        .measured("implied_bound_instances", implied.len() as f64, "instances")
        .measured("implied_bound_holds", implied.iter().filter(|&&b| b).count() as f64, "instances")
        .asserted(true)
        .outcome(failures == 0 && hex_tight && !hex.is_empty());
    with_detail(rec, first)
}

fn outer_face_record(outcomes: &[Outcome], _: &SuiteOptions) -> CheckRecord {
    let mut worst = f64::INFINITY;
    let mut worst_exact = f64::INFINITY;
    let mut bad = None;
    for (o, r) in reports(outcomes) {
        let Some(m) = is_grid(o) else { continue };
        let Some(c) = r.check("outer_face_size") else { continue };
        let k = c.measured.iter().find(|q| q.key == "k").map_or(0.0, |q| q.value);
        let margin = k - (GRID_FACE_SLOPE * (o.n as f64).sqrt() - GRID_FACE_OFFSET);
        worst = worst.min(margin);
        worst_exact = worst_exact.min(c.margin.unwrap_or(f64::INFINITY));
        if margin < 0.0 {
            bad.get_or_insert(format!("m = {m}: k = {k}"));
        }
    }
    let rec = CheckRecord::new("outer_face", "on grids the outer face has at least 3.3√n − 12 vertex incidences")
        .bound("slope", GRID_FACE_SLOPE, "incidences per √vertex")
        .bound("offset", GRID_FACE_OFFSET, "vertex-face incidences")
        .measured("min_margin_exact_threshold", worst_exact, "vertex-face incidences")
        .margin(worst)
        .asserted(true)
        .outcome(bad.is_none() && worst.is_finite());
    with_detail(rec, bad)
}

fn diameter_record(outcomes: &[Outcome], _: &SuiteOptions) -> CheckRecord {
    let mut min_ratio = f64::INFINITY;
    let mut bad = None;
    for (o, r) in reports(outcomes) {
        let Some(m) = is_grid(o) else { continue };
        let Some(c) = r.check("diameter_growth") else { continue };
        let d = c.measured.iter().find(|q| q.key == "diameter").map_or(-1.0, |q| q.value);
        if d != 2.0 * (m as f64 - 1.0) {
            bad.get_or_insert(format!("m = {m}: D = {d}"));
        }
        min_ratio = min_ratio.min(d / (o.n as f64).sqrt());
    }
    let rec = CheckRecord::new("diameter", "the m×m grid has diameter 2(m − 1), and D/√n ≥ 0.5 on grids")
        .measured("min_ratio", min_ratio, "ratio")
        .bound("min_ratio", 0.5, "ratio")
        .margin(min_ratio - 0.5)
        .asserted(true)
        .outcome(bad.is_none() && min_ratio >= 0.5);
    with_detail(rec, bad)
}

fn squaregraph_record(outcomes: &[Outcome], opts: &SuiteOptions) -> CheckRecord {
    let max = opts.scale.max_squaregraph();
    let results: Vec<Result<(), String>> = (1..=max)
        .into_par_iter()
        .map(|n| {
            let sq = tight_squaregraph(n).map_err(|e| format!("n = {n}: {e}"))?;
            let r = squaregraph_bounds(&sq);
            let s = r.squaregraph.as_ref().expect("extension present");
            if r.e as i64 != grid_edge_bound(n) {
                return Err(format!("n = {n}: e = {}", r.e));
            }
            if !s.arrangement.pass {
                return Err(format!("n = {n}: (c, ℓ) = ({}, {})", s.arrangement.crossings, s.arrangement.lines));
            }
            if !r.diameter_edges.as_ref().is_some_and(|b| b.pass) || !s.degree_two_pass {
                return Err(format!("n = {n}: bound violated"));
            }
            Ok(())
        })
        .collect();
    let tight_failures: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    let (checked, failed, first) = tally(outcomes, "squaregraph", |_| true);
    let (de_checked, de_failed, _) = tally(outcomes, "diameter_edges", |_| true);
    let rec = CheckRecord::new(
        "squaregraph",
        "trimmed grids are squaregraphs with exactly ⌊2n − 2√n⌋ edges and Turán-consistent (c, ℓ); 2n − D − 2 holds corpus-wide",
    )
    .measured("tight_instances", max as f64, "instances")
    .measured("tight_failures", tight_failures.len() as f64, "instances")
    .measured("corpus_squaregraphs", checked as f64, "instances")
    .measured("corpus_violations", failed as f64, "instances")
    .measured("diameter_bound_instances", de_checked as f64, "instances")
    .measured("diameter_bound_violations", de_failed as f64, "instances")
    .asserted(true)
    .outcome(tight_failures.is_empty() && failed == 0 && de_failed == 0);
    with_detail(rec, tight_failures.first().map(|s| s.to_string()).or(first))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_on_exact_line() {
        let (c, worst) = fit_linear_work(&[(10.0, 30.0), (20.0, 60.0), (40.0, 120.0)]);
        assert!((c - 3.0).abs() < 1e-12);
        assert!((worst - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fit_ratio_detects_outlier() {
        let (_, worst) = fit_linear_work(&[(10.0, 10.0), (10.0, 30.0)]);
        // fitted C = 2, outlier at 3
        assert!((worst - 1.5).abs() < 1e-12);
    }

    #[test]
    fn corpus_contents() {
        let c = corpus(Scale::Small, 1);
        assert_eq!(c.len(), 11 + 3 + 100 + 60);
        assert_eq!(c[0], InstanceSpec::grid(2));
    }

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let opts = SuiteOptions::new(Scale::Small, 3);
        let a = run_suite(&opts);
        for c in &a.checks {
            assert_eq!(c.status, Status::Pass, "{c:#?}");
        }
        let b = run_suite(&opts);
        assert_eq!(
            serde_json::to_string(&a.without_timing()).unwrap(),
            serde_json::to_string(&b.without_timing()).unwrap()
        );
    }
}
