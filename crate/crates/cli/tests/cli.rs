use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-boundary")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const STAR: &str = "X@H(1,2) X@H(2,2) X@V(2,1) X@V(2,2)";

#[test]
fn eval_values() {
    for oracle in ["sweep", "gf2", "dense"] {
        let o = bin(&["eval", STAR, "--oracle", oracle]);
        assert_eq!(o.status.code(), Some(0), "{oracle}");
        assert_eq!(stdout(&o).trim(), "+1", "{oracle}");
    }
    assert_eq!(stdout(&bin(&["eval", "X@H(2,3)"])).trim(), "0");
    assert_eq!(stdout(&bin(&["eval", ""])).trim(), "+1");
    assert_eq!(stdout(&bin(&["eval", "--", "-1", "Z@H(0,0)", "Z@H(0,1)", "Z@V(0,0)", "Z@V(1,0)"])).trim(), "-1");
}

#[test]
fn eval_errors_exit_two() {
    assert_eq!(bin(&["eval", "Q@H(0,0)"]).status.code(), Some(2));
    let wide = "X@H(0,0) X@H(9,9)";
    assert_eq!(bin(&["eval", wide, "--oracle", "dense"]).status.code(), Some(2));
}

#[test]
fn verify_usage_errors() {
    assert_eq!(bin(&["verify", "--suite", "ground,bogus"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "seed = twelve\n").unwrap();
    assert_eq!(bin(&["verify", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(bin(&["verify", "--config", "/nonexistent/x.cfg"]).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn sabotaged_functor_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sabotage.cfg");
    std::fs::write(&cfg, "suites = braiding\nfunctor_overrides = m=1,+1\n").unwrap();
    let o = bin(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["all_pass"], false);
    let checks = report["suites"][0]["checks"].as_array().unwrap();
    let braided = checks.iter().find(|c| c["name"] == "functor braided").unwrap();
    assert_eq!(braided["pass"], false);
    assert!(braided["witness"].as_str().unwrap().contains("(e,m)"));
}

#[test]
fn quick_verify_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = bin(&["verify", "--suite", "nontraciality,fusion", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["schema"], "toric-boundary-report/1");
    let names: Vec<&str> = report["suites"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["nontraciality", "fusion"]);
    assert!(report["suites"][0].get("elapsed_ms").is_none());
    let timed = bin(&["verify", "--suite", "nontraciality", "--timings"]);
    let timed: Value = serde_json::from_str(&stdout(&timed)).unwrap();
    assert!(timed["suites"][0]["elapsed_ms"].is_u64());
}

#[test]
fn tables() {
    let o = bin(&["tables"]);
    assert_eq!(o.status.code(), Some(0));
    let t: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let m = t["functor"].as_array().unwrap().iter().find(|e| e["label"] == "m").unwrap();
    assert_eq!(m["image"], "(1,-1)");
    let vacuum = &t["half_braiding"][0];
    assert_eq!(vacuum["pi"], "1");
    assert!(vacuum["scalars"].as_array().unwrap().iter().all(|s| s == "+1"));
    assert_eq!(t["condensation"][0]["z_gap"], 2);

    let p: Value = serde_json::from_str(&stdout(&bin(&["tables", "--pairs-only"]))).unwrap();
    let rows = p["pairs"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 4 && r.as_array().unwrap().iter().all(|x| x == "match")));
}

#[test]
fn diagrams() {
    let a = bin(&["diagram", "cone"]);
    assert_eq!(a.status.code(), Some(0));
    let svg = stdout(&a);
    assert!(svg.starts_with("<svg") && svg.contains("<polygon"));
    assert_eq!(stdout(&bin(&["diagram", "cone"])), svg);
    let c = stdout(&bin(&["diagram", "condensation", "--window", "window(cols=6, rows=0..6)"]));
    assert!(c.contains("stroke-dasharray"));
    assert_eq!(bin(&["diagram", "teapot"]).status.code(), Some(2));
}
