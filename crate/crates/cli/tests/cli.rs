use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn barcof(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_barcof")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn betti(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|g| g["betti"].as_u64().unwrap()).collect()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_accepts_the_sample_files() {
    let files: Vec<PathBuf> = ["span.json", "point.json", "s0.json", "circle_pushout.json", "interval_inclusion.json"]
        .iter()
        .map(|f| data(f))
        .collect();
    let mut args = vec!["validate"];
    args.extend(files.iter().map(|f| path(f)));
    let o = barcof(&args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let results = &stdout_json(&o)["validate.json"]["results"];
    assert_eq!(results.as_array().unwrap().len(), 5);
    assert_eq!(results[0]["kind"], "category");
    assert_eq!(results[3]["kind"], "diagram");
}

#[test]
fn validate_names_the_missing_composite() {
    let o = barcof(&["validate", path(&data("broken_category.json"))]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("g ∘ f"), "{}", stderr(&o));
}

#[test]
fn validate_names_the_broken_square() {
    let o = barcof(&["validate", path(&data("broken_naturality.json"))]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("g ∘ f"), "{}", stderr(&o));
}

#[test]
fn malformed_json_is_an_input_error_with_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    std::fs::write(&f, "{\n  \"objects\": [\"a\",\n}").unwrap();
    let o = barcof(&["validate", path(&f)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("bad.json:3:"), "{}", stderr(&o));
    let o = barcof(&["validate", path(&dir.path().join("absent.json"))]);
    assert_eq!(code(&o), 2);
}

#[test]
fn missing_faces_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("k.json");
    std::fs::write(&f, r#"{"dim_cap": 3, "nd": {"0": ["x"], "1": ["e"]}}"#).unwrap();
    let o = barcof(&["validate", path(&f)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("faces.e"), "{}", stderr(&o));
}

#[test]
fn hocolim_of_the_point_over_the_span() {
    let o = barcof(&["hocolim", "--diagram", path(&data("span_point.json"))]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let h = &stdout_json(&o)["hocolim_homology.json"];
    assert_eq!(betti(h), vec![1, 0]);
}

#[test]
fn hocolim_of_the_two_point_pushout_is_a_circle() {
    let o = barcof(&["hocolim", "--diagram", path(&data("circle_pushout.json")), "--lcolim", "--compare"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = stdout_json(&o);
    assert_eq!(betti(&v["hocolim_homology.json"]), vec![1, 1]);
    assert_eq!(betti(&v["lcolim_homology.json"]), vec![1, 1]);
    assert_eq!(v["comparison.json"]["passed"], true);
    assert!(!v["comparison.json"]["forward"].as_object().unwrap().is_empty());
}

#[test]
fn hocolim_over_the_terminal_category_is_the_value() {
    let o = barcof(&["hocolim", "--diagram", path(&data("terminal_circle.json"))]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v = stdout_json(&o);
    assert_eq!(betti(&v["hocolim_homology.json"]), vec![1, 1]);
    assert_eq!(v["hocolim.json"]["nd"]["0"].as_array().unwrap().len(), 1);
}

#[test]
fn hocolim_output_reloads() {
    let dir = tempfile::tempdir().unwrap();
    let o = barcof(&["--out", path(dir.path()), "hocolim", "--diagram", path(&data("circle_pushout.json"))]);
    assert_eq!(code(&o), 0);
    let o = barcof(&["validate", path(&dir.path().join("hocolim.json"))]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn approx_on_the_span_relative_to_its_ends() {
    let dir = tempfile::tempdir().unwrap();
    let o = barcof(&["--out", path(dir.path()), "approx", "--diagram", path(&data("circle_pushout.json")), "--subcat", "a,c"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    let objs = report["objects"].as_array().unwrap();
    for o in objs {
        if o["in_subcategory"] == true {
            assert_eq!(o["homology_equivalence"], true);
        }
    }
    // the value at b is built from an empty comma
    let b = objs.iter().find(|o| o["object"] == "b").unwrap();
    assert_eq!(b["qbar_betti"][0], 0);
    let o = barcof(&["validate", path(&dir.path().join("qbar.json"))]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn approx_relative_to_everything() {
    for (file, subcat) in [("interval_inclusion.json", "0,1"), ("terminal_circle.json", "*")] {
        for nat in [false, true] {
            let mut args = vec!["approx", "--diagram"];
            let f = data(file);
            args.push(path(&f));
            args.extend(["--subcat", subcat]);
            if nat {
                args.push("--nat");
            }
            let o = barcof(&args);
            assert_eq!(code(&o), 0, "{}", stderr(&o));
            let v = stdout_json(&o);
            assert_eq!(v["report.json"]["passed"], true);
        }
    }
    let o = barcof(&["approx", "--diagram", path(&data("terminal_circle.json")), "--subcat", "*"]);
    let v = stdout_json(&o);
    assert_eq!(v["report.json"]["objects"][0]["isomorphism"], true);
}

#[test]
fn approx_rejects_unknown_objects() {
    let o = barcof(&["approx", "--diagram", path(&data("circle_pushout.json")), "--subcat", "a,z"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains('z'));
}

#[test]
fn verify_suites() {
    let o = barcof(&["verify", "skeleton"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = &stdout_json(&o)["report.json"];
    assert_eq!(r["passed"], true);
    let ids: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    let o = barcof(&["verify", "comparison"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = barcof(&["verify", "nope"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_reports_an_exhausted_budget() {
    let o = barcof(&["verify", "adjunction", "--budget", "1"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert!(stdout_json(&o)["report.json"]["counts"]["exceeded"].as_u64().unwrap() > 0);
}

#[test]
fn caps_must_be_positive() {
    let o = barcof(&["verify", "skeleton", "--cap", "0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn categories_with_loops_need_a_cap() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("idempotent.json");
    std::fs::write(
        &f,
        r#"{
  "category": {
    "objects": ["*"],
    "morphisms": [{"id": "e", "src": "*", "tgt": "*"}],
    "compose": [{"g": "e", "f": "e", "gf": "e"}]
  },
  "values": {"*": {"dim_cap": 6, "nd": {"0": ["v"]}}},
  "action": {"e": {"v": "| v"}}
}"#,
    )
    .unwrap();
    let o = barcof(&["hocolim", "--diagram", path(&f)]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert!(stderr(&o).contains("cap"), "{}", stderr(&o));
}

#[test]
fn runs_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        let o = barcof(&[
            "--out",
            path(dir.path()),
            "hocolim",
            "--diagram",
            path(&data("circle_pushout.json")),
            "--lcolim",
            "--compare",
        ]);
        assert_eq!(code(&o), 0);
    }
    for name in ["hocolim.json", "hocolim_homology.json", "lcolim.json", "lcolim_homology.json", "comparison.json"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name}");
    }
}
