use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pennylab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pennylab"))
        .args(args)
        .env_remove("PENNYLAB_SEED")
        .env_remove("PENNYLAB_EPSILON")
        .env_remove("PENNYLAB_ISOPERIMETRIC_CONSTANT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn schema_validate(report: &Value) {
    let schema: Value =
        serde_json::from_str(include_str!("../schema/report.schema.json")).expect("schema parses");
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(report).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn generate_grid_prints_nine_points() {
    let o = pennylab(&["generate", "grid", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 9);
}

#[test]
fn generate_cycle_has_pentagon_radius() {
    let o = pennylab(&["generate", "cycle", "--len", "5"]);
    let r = 1.0 / (std::f64::consts::PI / 5.0).sin();
    for line in stdout(&o).lines() {
        let xy: Vec<f64> = line.split_whitespace().map(|t| t.parse().unwrap()).collect();
        assert!((xy[0].hypot(xy[1]) - r).abs() < 1e-12);
    }
}

#[test]
fn generate_to_file_prints_spec() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("hex.txt");
    let o = pennylab(&["generate", "hex", "--rings", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 7);
    let spec: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(spec["family"], "hex_packing");
    assert_eq!(spec["expected"]["e"], 12);
}

#[test]
fn generate_rejects_bad_parameters() {
    let o = pennylab(&["generate", "cycle", "--len", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn verify_grid_passes_with_tight_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let pts = stdout(&pennylab(&["generate", "grid", "--m", "3"]));
    let path = write(dir.path(), "grid.txt", &pts);
    let o = pennylab(&["verify", &path]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    schema_validate(&report);
    let checks = report["checks"].as_array().unwrap();
    let by_id = |id: &str| checks.iter().find(|c| c["id"] == id).unwrap().clone();
    for id in ["big_face_edges", "diameter_edges", "squaregraph"] {
        let c = by_id(id);
        assert_eq!(c["status"], "pass");
        assert_eq!(c["margin"], 0.0);
    }
    assert_eq!(by_id("penny_edges")["measured"][1]["value"], 12.0);
}

#[test]
fn verify_triangle_skips_triangle_free_checks() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "tri.txt", "0 0\n2 0\n1 1.7320508075688772\n");
    let o = pennylab(&["verify", &path]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = report["checks"].as_array().unwrap();
    let status = |id: &str| checks.iter().find(|c| c["id"] == id).unwrap()["status"].clone();
    assert_eq!(status("big_face_edges"), "skipped");
    assert_eq!(status("list_coloring"), "skipped");
    let penny = checks.iter().find(|c| c["id"] == "penny_edges").unwrap();
    assert_eq!(penny["status"], "pass");
    assert_eq!(penny["bounds"][0]["value"], 3.0);
}

#[test]
fn verify_input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let dup = write(dir.path(), "dup.txt", "0 0\n0 0\n3 0\n");
    assert_eq!(pennylab(&["verify", &dup]).status.code(), Some(2));
    let overlap = write(dir.path(), "overlap.txt", "0 0\n1 0\n");
    assert_eq!(pennylab(&["verify", "--as-centers", &overlap]).status.code(), Some(2));
    let bad = write(dir.path(), "bad.txt", "0 zero\n");
    assert_eq!(pennylab(&["verify", &bad]).status.code(), Some(2));
    assert_eq!(pennylab(&["verify", "/nonexistent/file"]).status.code(), Some(2));
    let ok = write(dir.path(), "ok.txt", "0 0\n2 0\n");
    assert_eq!(pennylab(&["verify", &ok, "--checks", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_check_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // 2×2 square: k = 4 is below √(2π√3·4) − C once C is small
    let path = write(dir.path(), "sq.txt", "0 0\n2 0\n0 2\n2 2\n");
    let o = pennylab(&["verify", &path, "--assert-outer-face", "--isoperimetric-constant", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = pennylab(&["verify", &path, "--assert-outer-face"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_embedded_graph() {
    let dir = tempfile::tempdir().unwrap();
    let edges = write(dir.path(), "c4.edges", "4 4\n0 1\n1 2\n2 3\n0 3\n");
    let rot = write(dir.path(), "c4.rot", "0: 1 3\n1: 2 0\n2: 3 1\n3: 0 2\n");
    let o = pennylab(&["verify", "--edges", &edges, "--rotation", &rot]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    schema_validate(&report);
    assert_eq!(report["spec"]["source"], "graph_file");
    let sq = report["checks"].as_array().unwrap().iter().find(|c| c["id"] == "squaregraph").unwrap();
    assert_eq!(sq["status"], "pass");
}

#[test]
fn color_grid_and_single_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let mut edges = String::from("9 12\n");
    for r in 0..3 {
        for c in 0..3 {
            let v = 3 * r + c;
            if c < 2 {
                edges += &format!("{v} {}\n", v + 1);
            }
            if r < 2 {
                edges += &format!("{v} {}\n", v + 3);
            }
        }
    }
    let g = write(dir.path(), "grid.edges", &edges);
    let l = write(dir.path(), "grid.lists", &"0 1 2\n".repeat(9));
    let o = pennylab(&["color", &g, &l]);
    assert_eq!(o.status.code(), Some(0));
    let colors: Vec<u32> = stdout(&o).lines().map(|l| l.split(' ').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(colors.len(), 9);
    for (u, v) in edges.lines().skip(1).map(|l| {
        let mut it = l.split(' ').map(|t| t.parse::<usize>().unwrap());
        (it.next().unwrap(), it.next().unwrap())
    }) {
        assert_ne!(colors[u], colors[v]);
    }

    let one = write(dir.path(), "one.edges", "1 0\n");
    let seven = write(dir.path(), "one.lists", "7\n");
    let o = pennylab(&["color", &one, &seven]);
    assert_eq!(stdout(&o), "0 7\n");
}

#[test]
fn color_c5_with_witness_lists_fails() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "c5.edges", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
    // odd cycle with identical 2-lists has no proper coloring
    let l = write(dir.path(), "c5.lists", &"0 1\n".repeat(5));
    let o = pennylab(&["color", &g, &l]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no coloring"));
    let short = write(dir.path(), "short.lists", "0 1\n");
    assert_eq!(pennylab(&["color", &g, &short]).status.code(), Some(2));
}

#[test]
fn suite_small_is_deterministic_and_valid() {
    let a = pennylab(&["suite", "small", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    let b = pennylab(&["suite", "small", "--seed", "11"]);
    let mut ra: Value = serde_json::from_str(&stdout(&a)).unwrap();
    let mut rb: Value = serde_json::from_str(&stdout(&b)).unwrap();
    schema_validate(&ra);
    ra.as_object_mut().unwrap().remove("timing");
    rb.as_object_mut().unwrap().remove("timing");
    assert_eq!(ra, rb);
}

#[test]
fn seed_from_environment() {
    let with_flag = pennylab(&["generate", "random-subgrid", "--m", "8", "--density", "0.7", "--seed", "5"]);
    let with_env = Command::new(env!("CARGO_BIN_EXE_pennylab"))
        .args(["generate", "random-subgrid", "--m", "8", "--density", "0.7"])
        .env("PENNYLAB_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(with_flag.stdout, with_env.stdout);
}

#[test]
fn help_documents_exit_codes() {
    let o = pennylab(&["verify", "--help"]);
    let text = stdout(&o);
    assert!(text.contains("Exit codes"));
    assert!(text.contains("2  input error"));
}
