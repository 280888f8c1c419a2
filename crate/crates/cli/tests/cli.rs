use std::fs;
use std::process::{Command, Output};

fn pinwheel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pinwheel")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn patch_counts_and_exports() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("p.svg");
    let json = dir.path().join("p.json");
    let o = pinwheel(&["patch", "-N", "2", "--svg", svg.to_str().unwrap(), "--json", json.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "25 tiles (13 p0, 12 p1)");
    assert_eq!(fs::read_to_string(&svg).unwrap().matches("<polygon").count(), 25);
    assert!(fs::read_to_string(&json).unwrap().contains("\"tiles\""));
    let o = pinwheel(&["patch", "-N", "1", "--root", "1"]);
    assert_eq!(stdout(&o).trim(), "5 tiles (3 p0, 2 p1)");
}

#[test]
fn patch_level_guard() {
    let o = pinwheel(&["patch", "-N", "11"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("level 11"));
    let o = pinwheel(&["--max-level", "1", "patch", "-N", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decompose_writes_rule_and_picture() {
    let dir = tempfile::tempdir().unwrap();
    let o = pinwheel(&["decompose", "--pinwheel", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("(1,1,0,0,1)"));
    assert!(stdout(&o).contains("[[2, 3], [3, 2]]"));
    let rule = dir.path().join("pinwheel_rule.json");
    let o = pinwheel(&["--rule", rule.to_str().unwrap(), "patch", "-N", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "25 tiles (13 p0, 12 p1)");
}

#[test]
fn algebra_actions() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("e.txt");
    fs::write(&f, "e[1](0;3,5)\n").unwrap();
    let o = pinwheel(&["algebra", "--expr", f.to_str().unwrap(), "--action", "adjoint"]);
    assert_eq!(stdout(&o).trim(), "e[1](0;5,3)");

    fs::write(&f, "e[1](0;3,5)\ne[1](0;4,3)\n").unwrap();
    let o = pinwheel(&["algebra", "--expr", f.to_str().unwrap(), "--action", "multiply"]);
    assert_eq!(stdout(&o).trim(), "0");

    fs::write(&f, "e[1](0;3,5)\n").unwrap();
    let o = pinwheel(&["algebra", "--expr", f.to_str().unwrap(), "--action", "norm"]);
    let line = stdout(&o);
    let nums: Vec<f64> =
        line.trim().trim_matches(|c| c == '[' || c == ']').split(", ").map(|s| s.parse().unwrap()).collect();
    assert!(nums[0] >= 1.0 - 1e-9 && nums[1] <= 1.0 + 1e-6, "{line}");

    fs::write(&f, "e[1](0;3,5) +\n").unwrap();
    let o = pinwheel(&["algebra", "--expr", f.to_str().unwrap(), "--action", "adjoint"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1, column"));
    assert!(stderr(&o).contains('^'));
}

#[test]
fn ktheory_operations() {
    assert_eq!(stdout(&pinwheel(&["ktheory", "eq", "0:(1,0)", "1:(2,3)"])).trim(), "true");
    assert_eq!(stdout(&pinwheel(&["ktheory", "eq", "0:(1,0)", "0:(0,1)"])).trim(), "false");
    let inv = stdout(&pinwheel(&["ktheory", "invariants", "0:(1,-1)"]));
    assert!(inv.starts_with("q=0 r=2"), "{inv}");
    let o = pinwheel(&["ktheory", "nonsplit", "--bound", "625"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("certificate pass"));
    let o = pinwheel(&["ktheory", "neg", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simplicity_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cert.json");
    let o = pinwheel(&["simplicity", "--arc-length", "0.1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("M = 40"));
    let cert: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(cert["M"], 40);
    let o = pinwheel(&["simplicity", "--arc-length", "1", "--out", out.to_str().unwrap()]);
    assert!(stdout(&o).contains("M = 2"));
    let o = pinwheel(&["simplicity", "--arc-length", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = pinwheel(&["simplicity", "--arc-length", "0.1", "--out", "/nonexistent-dir/cert.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_is_byte_identical() {
    let a = pinwheel(&["verify", "--suite", "all"]);
    let b = pinwheel(&["verify", "--suite", "all"]);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["pass"], true);
}
