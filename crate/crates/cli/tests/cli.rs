use std::process::{Command, Output};

use serde_json::Value;

fn p3rat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_p3rat")).args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn polys_writes_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let o = p3rat(&["polys", "--n", "3", "--m", "0", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let polys = v["polys"].as_array().unwrap();
    assert_eq!(polys.len(), 5);
    // s_1 = 2x + 1/2
    assert_eq!(polys[2]["coeffs"], serde_json::json!([["1/2", "0"], ["2", "0"]]));
}

#[test]
fn polys_at_zero_is_one() {
    let v = stdout_json(&p3rat(&["polys", "--n", "0"]));
    let polys = v["polys"].as_array().unwrap();
    assert_eq!(polys.last().unwrap()["coeffs"], serde_json::json!([["1", "0"]]));
}

#[test]
fn verify_passes_and_tampering_fails() {
    let o = p3rat(&["verify", "--n", "4", "--m", "0,1/2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));

    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("u.json");
    let o = p3rat(&["u", "--n", "3", "--m", "4/5*i", "--out", good.to_str().unwrap()]);
    assert!(o.status.success());
    let o = p3rat(&["verify", "--u-file", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    v["num"][0][0] = Value::String("12345/7".into());
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = p3rat(&["verify", "--u-file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL"));
}

#[test]
fn map_in_x_plane() {
    let o = p3rat(&["map", "--n", "1", "--plane", "x"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("plane,re,im,class,factor,n,m,prec"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2);
    for r in rows {
        let re: f64 = r.split(',').nth(1).unwrap().parse().unwrap();
        assert!((re.abs() - 0.25).abs() < 1e-25);
    }
}

#[test]
fn map_svg_output() {
    let o = p3rat(&["map", "--n", "2", "--plane", "y", "--format", "svg"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("<svg"));
    assert!(text.contains("#d62728") && text.contains("#1f77b4"));
}

#[test]
fn roots_are_certified() {
    let v = stdout_json(&p3rat(&["roots", "--n", "4", "--m", "1/2"]));
    assert_eq!(v["degree"], 10);
    assert_eq!(v["origin_multiplicity"], 6);
    assert_eq!(v["roots"].as_array().unwrap().len(), 4);
    assert_eq!(v["certified_simple"], true);
}

#[test]
fn halfint_matches_exact() {
    let o = p3rat(&["halfint", "--n", "3", "--k", "0", "--x", "1", "--check", "1e-20"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    let row = &v[0];
    for key in ["n", "k", "sign", "x", "re", "im", "D", "method"] {
        assert!(row.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn halfint_rejects_negative_axis() {
    let o = p3rat(&["halfint", "--n", "3", "--x", "-1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn probe_decreases() {
    let o = p3rat(&["probe", "--m", "0", "--y", "2", "--n", "5,10,20"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    let errs: Vec<f64> = v.as_array().unwrap().iter().map(|r| r["err"].as_str().unwrap().parse().unwrap()).collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn asympt_corner_certificate() {
    let v = stdout_json(&p3rat(&["asympt", "--y0", "1/2*i"]));
    assert_eq!(v["mode"], "exact");
    assert_eq!(v["degenerate"], true);
    assert_eq!(v["factorizations"][0]["fourth_power"], true);
    assert_eq!(v["factorizations"][0]["p0"], serde_json::json!(["1", "0"]));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(p3rat(&["map", "--n", "1", "--plane", "q"]).status.code(), Some(2));
    assert_eq!(p3rat(&["u", "--n", "2", "--m", "0.5"]).status.code(), Some(2));
    assert_eq!(p3rat(&["bogus"]).status.code(), Some(2));
}
