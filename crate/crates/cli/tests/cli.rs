use std::process::Command;

use serde_json::Value;

fn glagr(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_glagr")).args(args).output().expect("spawn glagr");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned(), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn read_json(path: &std::path::Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn form_json(diag: &str) -> String {
    let n = 18;
    let re: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| if i == j { diag.to_string() } else { "0".to_string() }).collect()).collect();
    let im: Vec<Vec<String>> = (0..n).map(|_| vec!["0".to_string(); n]).collect();
    serde_json::json!({ "re": re, "im": im }).to_string()
}

#[test]
fn ranks_pass_and_report_is_versioned() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (code, stdout, _) = glagr(&["ranks", "--report", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("ranks.ideal"));
    let v = read_json(&path);
    assert_eq!(v["schema"], "glagr-report");
    assert_eq!(v["version"], 1);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn only_filters_checks() {
    let (code, stdout, _) = glagr(&["--only", "ranks.ideal", "verify"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).count(), 1);
}

#[test]
fn tampered_ideal_fails_closure() {
    let (code, stdout, _) = glagr(&["--only", "identities.ideal_closed", "verify", "--samples", "3", "--tamper-ideal"]);
    assert_eq!(code, 1, "{stdout}");
    assert!(stdout.contains("FAIL"));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for name in ["a.json", "b.json"] {
        let path = dir.path().join(name);
        let (code, _, _) = glagr(&["--seed", "7", "--only", "identities.jacobi", "--report", path.to_str().unwrap(), "verify", "--samples", "4"]);
        assert_eq!(code, 0);
        let mut v = read_json(&path);
        for c in v["checks"].as_array_mut().unwrap() {
            c["runtime_ms"] = Value::Null;
        }
        reports.push(v);
    }
    assert_eq!(reports[0], reports[1]);
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(glagr(&["--only", "no.such.check", "verify"]).0, 2);
    assert_eq!(glagr(&["verify", "--samples", "0"]).0, 2);
    assert_eq!(glagr(&["ricci", "--background", "ppwave", "--H", "x1^^"]).0, 2);
    assert_eq!(glagr(&["evolve", "--degree", "9"]).0, 2);
    assert_eq!(glagr(&["gauge", "--h-file", "/nonexistent/h.json"]).0, 2);
    assert_eq!(glagr(&["mc", "--example", "abelian", "--xi", "1,2,3,4,5,6,7"]).0, 2);
    assert_eq!(glagr(&["frobnicate"]).0, 2);
}

#[test]
fn gauge_identity_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let (code, stdout, _) = glagr(&["gauge", "--h", "identity", "--report", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
    assert_eq!(read_json(&path)["command"], "gauge");
}

#[test]
fn gauge_from_file_checks_positivity() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, form_json("2")).unwrap();
    assert_eq!(glagr(&["gauge", "--h-file", good.to_str().unwrap()]).0, 0);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, form_json("-1")).unwrap();
    let (code, stdout, _) = glagr(&["gauge", "--h-file", bad.to_str().unwrap()]);
    assert_eq!(code, 1, "{stdout}");
}

#[test]
fn evolve_writes_energy_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("e.csv");
    let (code, stdout, _) = glagr(&["evolve", "--degree", "1", "--dims", "1", "--grid", "64", "--steps", "100", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.lines().count() > 100);
}

#[test]
fn mc_examples() {
    assert_eq!(glagr(&["mc", "--example", "abelian", "--order", "4"]).0, 0);
    assert_eq!(glagr(&["mc", "--example", "endo", "--order", "4"]).0, 0);
    assert_eq!(glagr(&["mc", "--example", "rees", "--order", "4"]).0, 0);
    let (code, stdout, _) = glagr(&["mc", "--example", "gravity-fiber", "--order", "2"]);
    assert_eq!(code, 1, "{stdout}");
}

#[test]
fn ricci_backgrounds() {
    assert_eq!(glagr(&["ricci", "--background", "minkowski"]).0, 0);
    assert_eq!(glagr(&["ricci", "--background", "ppwave", "--H", "x1^2 - x2^2"]).0, 0);
    let (code, stdout, _) = glagr(&["ricci", "--background", "ppwave", "--H", "x1^2 + x2^2"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("Ricci = 0: false"));
}
