use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const STAIRCASE: &str = "f1^3 f0^3 f1^2 f0^2 f1 f0 @ Lambda=[0,0,3]";

const FIGURE: &str = r#"{
  "base": [0, 0],
  "left": {"bottom": {"1": 1, "2": 2, "3": 1, "4": 1}, "partition": [2, 1, 1], "top": {"1": 5, "2": 1, "4": 1}},
  "right": {"bottom": {"1": 2, "2": 1, "3": 1}, "partition": [9, 2, 1, 1], "top": {"1": 1, "3": 1}}
}"#;

fn affmv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affmv")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn decorate_staircase() {
    let o = affmv(&["decorate", STAIRCASE]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["left"], serde_json::json!([3, 2, 1]));
    assert_eq!(v["right"], serde_json::json!([2, 1]));
    for z in v["zigzags"].as_array().unwrap() {
        assert!(z["interval"][0].is_string() && z["k"].is_i64());
    }
}

#[test]
fn validate_figure_and_a_broken_copy() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "fig.json", FIGURE);
    let o = affmv(&["polytope", "validate", &good]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["report"]["passed"], true);

    let bad = write(&dir, "bad.json", &FIGURE.replace("[9, 2, 1, 1]", "[10, 2, 1, 1]"));
    let o = affmv(&["polytope", "validate", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["report"]["part_bounds"], false);
}

#[test]
fn single_datum_files_are_completed() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "right.json",
        r#"{"side": "right", "datum": {"bottom": {"1": 2, "2": 1, "3": 1}, "partition": [9, 2, 1, 1], "top": {"1": 1, "3": 1}}}"#,
    );
    let o = affmv(&["polytope", "validate", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["polytope"]["left"]["partition"], serde_json::json!([2, 1, 1]));
}

#[test]
fn enumerate_zero_weight() {
    let o = affmv(&["polytope", "enumerate", "--weight", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["right"]["partition"], serde_json::json!([]));
    assert_eq!(affmv(&["polytope", "enumerate", "--weight", "1,1"]).status.code(), Some(0));
    assert_eq!(affmv(&["polytope", "enumerate", "--weight", "1,x"]).status.code(), Some(3));
}

#[test]
fn parse_errors_exit_3() {
    let dir = TempDir::new().unwrap();
    let path = write(
        &dir,
        "p.json",
        r#"{"start": ["0","0","0"], "segments": [{"dir": ["0","1","4"], "dur": 1.5}], "shape": ["0","1","4"]}"#,
    );
    let o = affmv(&["decorate", &path]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("/segments/0/dur"), "{err}");

    assert_eq!(affmv(&["decorate", "f1^0 @ Lambda=[0,1,4]"]).status.code(), Some(3));
    assert_eq!(affmv(&["decorate", "f1^2 @ Lambda=[0,1"]).status.code(), Some(3));
    assert_eq!(affmv(&["path", "apply", "f1 @ Lambda=[0,1,4]", "--op", "g1"]).status.code(), Some(3));
    assert_eq!(affmv(&["no-such-command"]).status.code(), Some(3));
    assert_eq!(affmv(&["decorate", "/nonexistent/file.json"]).status.code(), Some(1));
}

#[test]
fn path_apply_outputs() {
    let o = affmv(&["path", "apply", "f1 @ Lambda=[0,1,4]", "--op", "f0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["segments"].is_array());
    let o = affmv(&["path", "apply", "@ Lambda=[0,1,4]", "--op", "e1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o).is_null());
}

#[test]
fn crystal_gen_counts() {
    let o = affmv(&["crystal", "gen", "--shape", "0,1,4", "--depth", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let elements = v["elements"].as_array().unwrap();
    assert_eq!(elements[0]["word"], serde_json::json!([]));
    assert!(elements.iter().all(|e| e["depth"].as_u64().unwrap() <= 2));
    let o = affmv(&["crystal", "gen", "--shape", "1,1", "--depth", "4", "--type", "a2"]);
    assert_eq!(json(&o)["elements"].as_array().unwrap().len(), 8);
}

#[test]
fn from_path_round_trips_a_polytope_file() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "fig.json", FIGURE);
    let o = affmv(&["polytope", "from-path", &f]);
    assert_eq!(o.status.code(), Some(0));
    let want: Value = serde_json::from_str(FIGURE).unwrap();
    assert_eq!(json(&o), want);
}

fn polygon_points(svg: &str) -> Vec<(i64, i64)> {
    let doc = roxmltree::Document::parse(svg).expect("valid XML");
    let poly = doc.descendants().find(|n| n.has_tag_name("polygon")).expect("polygon");
    poly.attribute("data-figure")
        .unwrap()
        .split_whitespace()
        .map(|xy| {
            let (x, y) = xy.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect()
}

#[test]
fn svg_of_the_figure() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "fig.json", FIGURE);
    let out = dir.path().join("fig.svg");
    let o = affmv(&["--out", out.to_str().unwrap(), "render", "svg", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let svg = std::fs::read_to_string(&out).unwrap();
    let pts = polygon_points(&svg);
    assert_eq!(pts.len(), 14);
    assert_eq!(&pts[..4], &[(0, 0), (2, 2), (3, 5), (4, 10)]);
    assert!(svg.contains("(9,2,1^2)") && svg.contains("(2,1^2)"));
}

#[test]
fn svg_of_paths() {
    let o = affmv(&["render", "svg", "@ Lambda=[0,1,4]"]);
    assert_eq!(o.status.code(), Some(0));
    let svg = String::from_utf8(o.stdout).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert!(doc.descendants().any(|n| n.has_tag_name("circle") && n.attribute("class") == Some("point")));
    assert!(!doc.descendants().any(|n| n.has_tag_name("polygon")));

    let o = affmv(&["render", "svg", STAIRCASE]);
    assert_eq!(o.status.code(), Some(0));
    let pts = polygon_points(&String::from_utf8(o.stdout).unwrap());
    assert!(pts.len() >= 3);
    assert_ne!(pts.first(), pts.last());
}

#[test]
fn retract_step_outputs() {
    let o = affmv(&["retract", "step", STAIRCASE, "--word", "1", "--index", "0", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["is_generic"], true);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), v["folded"]["markers"].as_array().unwrap().len());
    let o = affmv(&["retract", "step", STAIRCASE, "--index", "0", "--coeffs", "1,2,3,4,5,6,7,8,9"]);
    assert_eq!(o.status.code(), Some(2));
    let o = affmv(&["retract", "step", STAIRCASE, "--word", "1,1", "--index", "0", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = affmv(&["retract", "step", STAIRCASE, "--index", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("d.json");
    let o = affmv(&["decorate", STAIRCASE, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["right"], serde_json::json!([2, 1]));
}

#[test]
fn run_returns_exit_codes_in_process() {
    assert_eq!(
        affmv_cli::run(["affmv", "polytope", "enumerate", "--weight", "0,0", "--bound", "1", "--out", "/dev/null"]),
        0
    );
    assert_eq!(affmv_cli::run(["affmv", "polytope", "enumerate"]), 3);
}
