use std::path::{Path, PathBuf};
use std::process::Command;

use divisorial::fixtures::{plane_valuation, PlaneExample, PlaneParams};
use divisorial::io::{canonical, cone_json, parse_cone, parse_tower, tower_json};
use divisorial::lattice::Cone;
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_divisorial"))
        .args(args)
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text).unwrap_or(Value::String(text));
    (value, out.status.code().unwrap())
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const A1: &str = r#"{"rank": 2, "rays": [[0, 1], [2, -1]]}"#;
const CUSP: &str =
    r#"{"rank": 2, "terms": [{"exp": [0, 2], "coef": "1"}, {"exp": [3, 0], "coef": "-1"}]}"#;

#[test]
fn mather_on_a1() {
    let dir = TempDir::new().unwrap();
    let cone = write(&dir, "a1.json", A1);
    let (v, code) = run(&["mather", "--cone", s(&cone), "--a", "1,0", "--verify", "10"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["q"], 1);
    assert_eq!(v["result"]["k"], 1);
    assert_eq!(v["result"]["codim"], 2);
    assert_eq!(v["result"]["verify"]["agrees"], true);
}

#[test]
fn tower_eval_on_the_fourth_example() {
    let dir = TempDir::new().unwrap();
    let tower = write(
        &dir,
        "ex4.json",
        &canonical(&tower_json(&plane_valuation(
            PlaneExample::IV,
            &PlaneParams::default(),
        ))),
    );
    let poly = write(&dir, "f.json", CUSP);
    let (v, code) = run(&["tower", "eval", "--tower", s(&tower), "--poly", s(&poly)]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["value"], 7);

    let (v, code) = run(&["tower", "canonical", "--tower", s(&tower)]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["relative_canonical_order"], 5);
    assert_eq!(v["result"]["codim"], 6);
}

#[test]
fn tower_oracle_without_the_cusp_condition() {
    let dir = TempDir::new().unwrap();
    let tower = write(
        &dir,
        "ex4.json",
        &canonical(&tower_json(&plane_valuation(
            PlaneExample::IV,
            &PlaneParams::default(),
        ))),
    );
    let conds = write(
        &dir,
        "c.json",
        r#"{"rank": 2, "conditions": [
            {"terms": [{"exp": [1, 0], "coef": "1"}], "value": 2},
            {"terms": [{"exp": [0, 1], "coef": "1"}], "value": 3}]}"#,
    );
    let probes = write(
        &dir,
        "p.json",
        &format!(
            r#"{{"rank": 2, "polys": [{}]}}"#,
            &CUSP[CUSP.find("[{").unwrap()..CUSP.len() - 1]
        ),
    );
    let (v, code) = run(&[
        "tower",
        "oracle",
        "--conditions",
        s(&conds),
        "--tower",
        s(&tower),
        "--probes",
        s(&probes),
        "--depth",
        "3",
    ]);
    assert_eq!(code, 1, "{v}");
    assert_eq!(v["exit_code"], 1);
}

#[test]
fn smooth_criterion_negative_case() {
    let (v, code) = run(&[
        "criterion",
        "smooth",
        "--vals",
        "2,3",
        "--kq",
        "6",
        "--weights",
        "2,3",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["concluded"], false);
    let (v, code) = run(&[
        "criterion",
        "smooth",
        "--vals",
        "2,3",
        "--kq",
        "5",
        "--weights",
        "2,3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["q"], 1);
}

#[test]
fn bad_fractions_are_input_errors() {
    let dir = TempDir::new().unwrap();
    let poly = write(
        &dir,
        "f.json",
        r#"{"rank": 2, "terms": [{"exp": [1, 0], "coef": "1/0"}]}"#,
    );
    let (v, code) = run(&["val", "eval", "--a", "1,1", "--poly", s(&poly)]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "parse");

    let decimal = write(
        &dir,
        "g.json",
        r#"{"rank": 2, "terms": [{"exp": [1, 0], "coef": "0.5"}]}"#,
    );
    assert_eq!(
        run(&["val", "eval", "--a", "1,1", "--poly", s(&decimal)]).1,
        2
    );
}

#[test]
fn unequal_rays_and_unknown_fields_are_rejected() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "c.json",
        r#"{"rank": 2, "rays": [[1, 0], [0, 1, 0]]}"#,
    );
    let (v, code) = run(&["cone", "hilbert", "--cone", s(&bad)]);
    assert_eq!(code, 2);
    assert!(
        v["error"]["message"].as_str().unwrap().contains("rays"),
        "{v}"
    );
    let extra = write(
        &dir,
        "d.json",
        r#"{"rank": 2, "rays": [[1, 0], [0, 1]], "colour": 1}"#,
    );
    assert_eq!(run(&["cone", "hilbert", "--cone", s(&extra)]).1, 2);
}

#[test]
fn rank_five_hilbert_is_a_capability_limit() {
    let dir = TempDir::new().unwrap();
    let cone = write(&dir, "c.json", &canonical(&cone_json(&Cone::orthant(5))));
    let (v, code) = run(&["cone", "hilbert", "--cone", s(&cone)]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "capability");
}

#[test]
fn sampling_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let cone = write(&dir, "a1.json", A1);
    let args = [
        "arc",
        "sample",
        "--cone",
        s(&cone),
        "--a",
        "1,1",
        "--truncation",
        "6",
        "--seed",
        "42",
    ];
    let first = Command::new(env!("CARGO_BIN_EXE_divisorial"))
        .args(args)
        .output()
        .unwrap();
    let second = Command::new(env!("CARGO_BIN_EXE_divisorial"))
        .args(args)
        .output()
        .unwrap();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), Some(0));
    // the seed is mandatory
    assert_eq!(
        run(&[
            "arc",
            "sample",
            "--cone",
            s(&cone),
            "--a",
            "1,1",
            "--truncation",
            "6"
        ])
        .1,
        2
    );
}

#[test]
fn sampled_arc_feeds_back_into_ord() {
    let dir = TempDir::new().unwrap();
    let cone = write(&dir, "q.json", &canonical(&cone_json(&Cone::orthant(2))));
    let (v, _) = run(&[
        "arc",
        "sample",
        "--cone",
        s(&cone),
        "--a",
        "2,3",
        "--truncation",
        "12",
        "--seed",
        "5",
    ]);
    let arc = write(&dir, "arc.json", &canonical(&v["result"]));
    let poly = write(&dir, "f.json", CUSP);
    let (v, code) = run(&["arc", "ord", "--arc", s(&arc), "--poly", s(&poly)]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["order"]["kind"], "known");
    assert_eq!(v["result"]["order"]["value"], 6);
}

#[test]
fn empirical_value_matches() {
    let dir = TempDir::new().unwrap();
    let cone = write(&dir, "q.json", &canonical(&cone_json(&Cone::orthant(2))));
    let poly = write(&dir, "f.json", CUSP);
    let (_, code) = run(&[
        "arc",
        "empirical-val",
        "--cone",
        s(&cone),
        "--a",
        "2,3",
        "--poly",
        s(&poly),
        "--seed",
        "1",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn worked_examples_table_passes() {
    let out = Command::new(env!("CARGO_BIN_EXE_divisorial"))
        .arg("--paper-examples")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("FAIL"));
    let (v, code) = run(&["--paper-examples", "--json"]);
    assert_eq!(code, 0);
    assert!(v["provenance"].as_array().unwrap().len() > 20);
}

#[test]
fn canonical_files_round_trip() {
    let v = plane_valuation(PlaneExample::VPrime, &PlaneParams::new(2, -3));
    let text = canonical(&tower_json(&v));
    assert_eq!(canonical(&tower_json(&parse_tower(&text).unwrap())), text);
    let cone = canonical(&cone_json(
        &Cone::from_i64_rays(&[&[0, 1], &[2, -1]]).unwrap(),
    ));
    assert_eq!(canonical(&cone_json(&parse_cone(&cone).unwrap())), cone);
}
