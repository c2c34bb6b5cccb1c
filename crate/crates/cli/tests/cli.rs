use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn glab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn thick_analyze_passes() {
    let out = glab(&["thick", "analyze", "--group", "Cyc(12)", "--set", "arc(1)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config"]["task"], "thick-analyze");
}

#[test]
fn bad_input_exits_2() {
    let out = glab(&["group", "--group", "SL(2,4)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not prime"));

    let out = glab(&["group", "--group", "Sym(5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error"));

    let out = glab(&["chevalley", "class-cube", "--p", "5", "--t", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn order_cap_exits_3() {
    let out = glab(&["group", "--group", "Sym(6)", "--order-cap", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn csv_output() {
    let out = glab(&["chevalley", "class-cube-sweep", "--n", "2", "--p", "5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,class_size,square_covers_noncentral,cube_is_group,min_power");
    assert_eq!(lines.len(), 3);

    let out = glab(&["thick", "gn", "--group", "Cyc(6)", "--n", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("gn.cfg");
    let report = dir.path().join("report.json");
    fs::write(&cfg, "# G_3 of Z/6\ntask=gn\ngroup=Cyc(6)\nn=3\n").unwrap();
    let out = glab(&["run", "--config", cfg.to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["config"]["n"], 3);
    assert!(v["results"].to_string().contains("\"5\""));

    fs::write(&cfg, "group=Cyc(6)\n").unwrap();
    let out = glab(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let missing = dir.path().join("missing.cfg");
    assert_eq!(glab(&["run", "--config", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn reruns_agree() {
    let args = ["ext", "club", "--group", "Sym(4)", "--samples", "200", "--seed", "9"];
    let (a, b) = (json(&glab(&args)), json(&glab(&args)));
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["witnesses"], b["witnesses"]);
    assert_eq!(a["seed"], 9);
}

#[test]
fn tasks_lists_every_task() {
    let out = glab(&["tasks"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 23);
    assert!(text.lines().any(|l| l.starts_with("perm-express")));
}
