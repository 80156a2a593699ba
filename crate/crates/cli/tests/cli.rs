use std::f64::consts::FRAC_1_SQRT_2;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn gfusion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gfusion"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).expect("valid JSON")
}

fn num(v: &Value, path: &[&str]) -> f64 {
    path.iter().fold(v, |v, k| &v[k]).as_f64().expect("number")
}

fn twelve_digits(x: f64) -> f64 {
    format!("{x:.11e}").parse().unwrap()
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn golden_reports_match_closed_forms() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");
    let basis = json(&std::fs::read(format!("{dir}/analyze_orthonormal_basis_c3.json")).unwrap());
    assert_eq!(num(&basis, &["results", "bounds", "lower"]), 1.0);
    assert_eq!(num(&basis, &["results", "bounds", "upper"]), 1.0);
    assert_eq!(basis["results"]["is_parseval"], true);

    let single = json(&std::fs::read(format!("{dir}/analyze_single_subspace_c2.json")).unwrap());
    assert_eq!(single["results"]["is_gf_complete"], false);
    assert_eq!(single["results"]["condition"], Value::Null);
    assert_eq!(single["results"]["sequence"]["dim"], 1);

    let two = json(&std::fs::read(format!("{dir}/analyze_two_subspace_c2.json")).unwrap());
    assert_eq!(num(&two, &["results", "bounds", "lower"]), twelve_digits(1.0 - FRAC_1_SQRT_2));
    assert_eq!(num(&two, &["results", "bounds", "upper"]), twelve_digits(1.0 + FRAC_1_SQRT_2));
    let cond = (1.0 + FRAC_1_SQRT_2) / (1.0 - FRAC_1_SQRT_2);
    assert_eq!(num(&two, &["results", "condition"]), twelve_digits(cond));
}

#[test]
fn analyze_exit_codes() {
    assert_eq!(gfusion(&["analyze", &data("orthonormal_basis_c3")]).status.code(), Some(0));
    let out = gfusion(&["analyze", &data("single_subspace_c2")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("is_gf_complete: false"));
}

#[test]
fn text_and_json_agree() {
    let text = String::from_utf8(gfusion(&["analyze", &data("two_subspace_c2")]).stdout).unwrap();
    let doc = json(&gfusion(&["analyze", "--json", &data("two_subspace_c2")]).stdout);
    let lower = num(&doc, &["results", "bounds", "lower"]);
    assert!(text.contains(&format!("lower: {lower}")));
    assert!(text.contains(&format!("condition: {}", num(&doc, &["results", "condition"]))));
    assert_eq!(doc["input_digest"].as_str().unwrap().len(), 64);
    assert!(text.contains(doc["input_digest"].as_str().unwrap()));
}

#[test]
fn parse_errors_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"ambient_dim":1,"members":[{"weight":-1.0,"subspace":[[[1.0,0.0]]],"operator":[[[1.0,0.0]]]}]}"#,
    );
    let out = gfusion(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("members[0].weight"));

    let out = gfusion(&["analyze", "/nonexistent/frame.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invalid_tolerance_is_an_input_error() {
    let out = gfusion(&["analyze", "--tol-rank", "2", &data("two_subspace_c2")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dual_of_parseval_frame_is_itself() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("dual.json");
    let out = gfusion(&["dual", "--json", "--out", out_path.to_str().unwrap(), &data("orthonormal_basis_c3")]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out.stdout);
    assert!(num(&report, &["results", "dual_operator_residual"]) <= 1e-12);
    assert!(num(&report, &["results", "synthesis_product_residual"]) <= 1e-12);
    let dual = json(&std::fs::read(&out_path).unwrap());
    let input = json(&std::fs::read(data("orthonormal_basis_c3")).unwrap());
    for (a, b) in dual["members"].as_array().unwrap().iter().zip(input["members"].as_array().unwrap()) {
        assert_eq!(a["weight"], b["weight"]);
        // Subspaces agree up to a unit phase, operators exactly.
        let pa = a["subspace"][0].as_array().unwrap();
        let pb = b["subspace"][0].as_array().unwrap();
        for (x, y) in pa.iter().zip(pb) {
            let mag = |z: &Value| z[0].as_f64().unwrap().hypot(z[1].as_f64().unwrap());
            assert!((mag(x) - mag(y)).abs() < 1e-14);
        }
    }
}

#[test]
fn frame_goes_to_stdout_and_report_to_stderr_without_out() {
    let out = gfusion(&["parsevalize", &data("two_subspace_c2")]);
    assert_eq!(out.status.code(), Some(0));
    let frame = json(&out.stdout);
    assert_eq!(frame["ambient_dim"], 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("identity_residual"));
}

#[test]
fn parsevalized_output_analyzes_as_parseval() {
    let dir = tempfile::tempdir().unwrap();
    let gen = dir.path().join("gen.json");
    let par = dir.path().join("par.json");
    let g = gfusion(&["generate", "--seed", "17", "--ambient-dim", "6", "--members", "4", "--subspace-dim", "3", "--codomain-dim", "2", "--out", gen.to_str().unwrap()]);
    assert_eq!(g.status.code(), Some(0));
    let p = gfusion(&["parsevalize", "--json", "--out", par.to_str().unwrap(), gen.to_str().unwrap()]);
    assert_eq!(p.status.code(), Some(0));
    assert!(num(&json(&p.stdout), &["results", "identity_residual"]) <= 1e-8);
    let a = json(&gfusion(&["analyze", "--json", par.to_str().unwrap()]).stdout);
    assert_eq!(a["results"]["is_parseval"], true);

    let d = gfusion(&["dual", "--json", "--out", dir.path().join("d.json").to_str().unwrap(), gen.to_str().unwrap()]);
    let r = json(&d.stdout);
    assert!(num(&r, &["results", "dual_operator_residual"]) <= 1e-8);
    assert!(num(&r, &["results", "synthesis_product_residual"]) <= 1e-8);
}

#[test]
fn ill_conditioned_input_hits_the_guard() {
    let dir = tempfile::tempdir().unwrap();
    let small = 10f64.powf(-6.25);
    let frame = format!(
        r#"{{"ambient_dim":2,"members":[{{"weight":1.0,"subspace":[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[1.0,0.0]]],"operator":[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[{small},0.0]]]}}]}}"#
    );
    let path = write(dir.path(), "ill.json", &frame);
    let p = path.to_str().unwrap();
    assert_eq!(gfusion(&["analyze", p]).status.code(), Some(0));
    for cmd in ["dual", "parsevalize"] {
        let out = gfusion(&[cmd, p]);
        assert_eq!(out.status.code(), Some(3), "{cmd}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("condition number"));
    }
    assert_eq!(gfusion(&["dual", &data("single_subspace_c2")]).status.code(), Some(2));
}

#[test]
fn remove_reports_deletion_conditions() {
    let out = gfusion(&["remove", "--json", "--index", "0", &data("orthonormal_basis_c3")]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out.stdout);
    assert_eq!(r["results"]["cond1_holds"], true);
    assert_eq!(r["results"]["cond3_holds"], false);
    assert_eq!(r["results"]["remaining_rank"], 2);

    let out = gfusion(&["remove", "--index", "5", &data("two_subspace_c2")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn transform_reports() {
    let dir = tempfile::tempdir().unwrap();
    let image = dir.path().join("image.json");
    let out = gfusion(&[
        "transform", "--json", "--operator", &data("diag_2_1"), "--out", image.to_str().unwrap(), &data("two_subspace_c2"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out.stdout);
    assert_eq!(r["results"]["rank"], 2);
    assert_eq!(r["results"]["singular_values"], serde_json::json!([2.0, 1.0]));
    let lower = num(&r, &["results", "bounds", "lower"]);
    let upper = num(&r, &["results", "bounds", "upper"]);
    assert!(lower >= 1.0 - FRAC_1_SQRT_2 - 1e-9 && upper <= 4.0 * (1.0 + FRAC_1_SQRT_2) + 1e-9);
    assert!(num(&r, &["results", "identity_residual"]) <= 1e-9);

    let out = gfusion(&["transform", "--json", "--operator", &data("rank_one"), &data("two_subspace_c2")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out.stderr);
    assert_eq!(r["results"]["rank"], 1);
    assert_eq!(r["results"]["sequence"]["dim"], 1);
    assert_eq!(r["results"]["is_frame"], false);

    let out = gfusion(&["transform", "--operator", &data("diag_2_1"), &data("orthonormal_basis_c3")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn generate_is_deterministic() {
    let a = gfusion(&["generate", "--seed", "42"]);
    let b = gfusion(&["generate", "--seed", "42"]);
    let c = gfusion(&["generate", "--seed", "43"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);

    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"seed":42,"ambient_dim":4,"member_count":3,"subspace_dims":[2,2,2],"codomain_dims":[2,2,2],"weight_range":[0.5,2.0],"ensure_frame":true}"#,
    );
    let d = gfusion(&["generate", spec.to_str().unwrap()]);
    assert_eq!(d.stdout, a.stdout);

    let bad = write(dir.path(), "bad.json", r#"{"seed":1,"ambient_dim":2,"member_count":1,"subspace_dims":[3],"codomain_dims":[1],"weight_range":[0.5,2.0],"ensure_frame":true}"#);
    assert_eq!(gfusion(&["generate", bad.to_str().unwrap()]).status.code(), Some(1));
}
