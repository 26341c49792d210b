//! End-to-end runs of the `trophom` binary: outputs, round trips and exit
//! codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn trophom(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trophom"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str], dir: &Path) -> String {
    let out = trophom(args, dir);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn json_of(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn line_heights_give_the_line_census() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    write(
        d,
        "h.json",
        r#"{"N": 2, "d": 1, "heights": [{"m": [1,0,0], "a": "0"}, {"m": [0,1,0], "a": "0"}, {"m": [0,0,1], "a": "0"}]}"#,
    );
    let summary = ok(&["hypersurface", "--heights", "h.json", "--out", "x.json"], d);
    assert!(summary.contains("degree 1"), "{summary}");
    assert!(summary.contains("4 of dim 0, 3 of dim 1"), "{summary}");
    let x = json_of(&fs::read_to_string(d.join("x.json")).unwrap());
    assert_eq!(x["faces"].as_array().unwrap().len(), 7);
    // the generated line complex is the same object
    ok(&["gen", "line", "--out", "line.json"], d);
    assert_eq!(
        fs::read(d.join("x.json")).unwrap(),
        fs::read(d.join("line.json")).unwrap()
    );
}

#[test]
fn single_monomial_is_a_weighted_coordinate_line() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    write(
        d,
        "h.json",
        r#"{"N": 2, "d": 1, "heights": [{"m": [1,0,0], "a": "0"}]}"#,
    );
    let x = json_of(&ok(&["hypersurface", "--heights", "h.json"], d));
    for f in x["faces"].as_array().unwrap() {
        assert_eq!(f["sedentarity"][0], 0);
        assert_eq!(f["weight"], 1);
    }
}

#[test]
fn homology_reports() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    ok(&["gen", "line", "--out", "line.json"], d);
    let r = json_of(&ok(&["homology", "--complex", "line.json", "--format", "json"], d));
    assert_eq!(r["hodge"], serde_json::json!([[1, 0], [0, 1]]));
    assert_eq!(r["E"], "1 - u*v");
    assert_eq!(r["chi_y"], "1 - y");
    let text = ok(&["homology", "--complex", "line.json"], d);
    assert!(text.contains("E = 1 - u*v"));
    let row = json_of(&ok(
        &["homology", "--complex", "line.json", "--p", "1", "--format", "json"],
        d,
    ));
    assert_eq!(row["h"], serde_json::json!([0, 1]));
    ok(&["gen", "point", "--out", "pt.json"], d);
    let r = json_of(&ok(&["homology", "--complex", "pt.json", "--format", "json"], d));
    assert_eq!(r["hodge"], serde_json::json!([[1]]));
    let chi = json_of(&ok(&["chi", "--complex", "line.json", "--format", "json"], d));
    assert_eq!(chi["chi"], serde_json::json!([1, -1]));
    let e = json_of(&ok(&["epoly", "--complex", "line.json", "--format", "json"], d));
    assert_eq!(e["E"], "1 - u*v");
}

#[test]
fn malformed_and_missing_inputs_exit_2() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    write(d, "bad.json", "{\"N\": 2,\n  \"vertices\": [");
    let out = trophom(&["homology", "--complex", "bad.json"], d);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line") && err.contains("column"), "{err}");
    write(d, "empty.json", "");
    assert_eq!(
        trophom(&["hypersurface", "--heights", "empty.json"], d).status.code(),
        Some(2)
    );
    assert_eq!(
        trophom(&["homology", "--complex", "nope.json"], d).status.code(),
        Some(2)
    );
    assert_eq!(trophom(&["homology"], d).status.code(), Some(2));
    assert_eq!(trophom(&["frobnicate"], d).status.code(), Some(2));
}

#[test]
fn invalid_inputs_exit_1() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    // all heights -inf
    write(d, "h.json", r#"{"N": 2, "d": 1, "heights": []}"#);
    assert_eq!(
        trophom(&["hypersurface", "--heights", "h.json"], d).status.code(),
        Some(1)
    );
    // a face whose facet is missing
    write(
        d,
        "x.json",
        r#"{"N": 1, "vertices": [{"coords": ["0", "0"], "sedentarity": []}], "faces": [{"vertices": [0], "divisorial": [0], "sedentarity": [], "weight": 1}]}"#,
    );
    assert_eq!(trophom(&["homology", "--complex", "x.json"], d).status.code(), Some(1));
}

#[test]
fn checks() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    ok(&["gen", "line", "--out", "line.json"], d);
    let r = ok(&["check", "--complex", "line.json", "--balanced", "--smooth"], d);
    assert!(!r.contains("FAIL"), "{r}");

    // two of the three rays of the line
    write(
        d,
        "two.json",
        r#"{"N": 2,
            "vertices": [{"coords": ["0","0","0"], "sedentarity": []},
                         {"coords": ["0","-inf","0"], "sedentarity": [1]},
                         {"coords": ["0","0","-inf"], "sedentarity": [2]}],
            "faces": [{"vertices": [0], "divisorial": [], "sedentarity": [], "weight": 1},
                      {"vertices": [0], "divisorial": [1], "sedentarity": [], "weight": 1},
                      {"vertices": [0], "divisorial": [2], "sedentarity": [], "weight": 1},
                      {"vertices": [1], "divisorial": [], "sedentarity": [1], "weight": 1},
                      {"vertices": [2], "divisorial": [], "sedentarity": [2], "weight": 1}]}"#,
    );
    let out = trophom(&["check", "--complex", "two.json", "--balanced", "--format", "json"], d);
    assert_eq!(out.status.code(), Some(1));
    let r = json_of(&String::from_utf8(out.stdout).unwrap());
    let bal = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "balanced")
        .unwrap();
    assert_eq!(bal["pass"], false);
    assert!(bal["counterexample"].as_str().unwrap().starts_with("face"));

    // a ≡ 0 on 2Δ_2 is not unimodular
    let pts = ["[2,0,0]", "[0,2,0]", "[0,0,2]", "[1,1,0]", "[1,0,1]", "[0,1,1]"];
    let hs: Vec<String> = pts.iter().map(|m| format!(r#"{{"m": {m}, "a": "0"}}"#)).collect();
    write(
        d,
        "flat.json",
        &format!(r#"{{"N": 2, "d": 2, "heights": [{}]}}"#, hs.join(",")),
    );
    let out = trophom(&["check", "--heights", "flat.json", "--unimodular"], d);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("unimodular: FAIL"));
}

#[test]
fn generators_pass_all_checks() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    for deg in ["1", "2", "3", "4"] {
        ok(&["gen", "curve", "--d", deg, "--out", "c.json"], d);
        let r = ok(
            &["check", "--heights", "c.json", "--balanced", "--smooth", "--unimodular"],
            d,
        );
        assert!(!r.contains("FAIL"), "{r}");
        let deg_out = json_of(&ok(
            &["degree", "--heights", "c.json", "--seed", "7", "--format", "json"],
            d,
        ));
        assert_eq!(deg_out["degree"].to_string(), deg);
    }
    ok(&["gen", "surface", "--d", "2", "--out", "s.json"], d);
    let r = ok(
        &["check", "--heights", "s.json", "--balanced", "--smooth", "--unimodular"],
        d,
    );
    assert!(!r.contains("FAIL"), "{r}");
    ok(&["gen", "plane", "--n", "3", "--out", "p.json"], d);
    let r = ok(&["check", "--complex", "p.json", "--balanced", "--smooth"], d);
    assert!(!r.contains("FAIL"), "{r}");
}

#[test]
fn bergman_from_bases() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    write(
        d,
        "u34.json",
        r#"{"ground": 4, "bases": [[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}"#,
    );
    ok(&["gen", "bergman", "--matroid", "u34.json", "--out", "b.json"], d);
    ok(&["bergman", "--matroid", "u34.json", "--out", "b2.json"], d);
    assert_eq!(
        fs::read(d.join("b.json")).unwrap(),
        fs::read(d.join("b2.json")).unwrap()
    );
    let x = json_of(&fs::read_to_string(d.join("b.json")).unwrap());
    assert_eq!(x["N"], 3);
    let r = ok(
        &[
            "check",
            "--complex",
            "b.json",
            "--balanced",
            "--smooth",
            "--matroid",
            "u34.json",
        ],
        d,
    );
    assert!(!r.contains("FAIL"), "{r}");
    let deg = json_of(&ok(&["degree", "--complex", "b.json", "--format", "json"], d));
    assert_eq!(deg["degree"], 1);
}

#[test]
fn outputs_round_trip_byte_for_byte() {
    let t = TempDir::new().unwrap();
    let d = t.path();
    ok(&["gen", "curve", "--d", "3", "--out", "h.json"], d);
    ok(&["hypersurface", "--heights", "h.json", "--out", "x.json"], d);
    // re-reading and re-emitting through the library is the identity on bytes
    let text = fs::read_to_string(d.join("x.json")).unwrap();
    let x = tropical_homology::tropgeo::TropicalComplex::from_json(&json_of(&text)).unwrap();
    assert_eq!(tropical_homology::cli::canonical_json(&x.to_json()), text);
    let htext = fs::read_to_string(d.join("h.json")).unwrap();
    let h = tropical_homology::hypersurface::HeightFunction::from_json(&json_of(&htext)).unwrap();
    assert_eq!(tropical_homology::cli::canonical_json(&h.to_json()), htext);
    // and runs are deterministic
    ok(
        &[
            "gen", "random", "--n", "2", "--d", "3", "--seed", "11", "--out", "r1.json",
        ],
        d,
    );
    ok(
        &[
            "gen", "random", "--n", "2", "--d", "3", "--seed", "11", "--out", "r2.json",
        ],
        d,
    );
    assert_eq!(
        fs::read(d.join("r1.json")).unwrap(),
        fs::read(d.join("r2.json")).unwrap()
    );
}
