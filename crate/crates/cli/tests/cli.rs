use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn relcur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relcur"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = relcur(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn matrix_files_round_trip_bit_identically() {
    let dir = tempfile::tempdir().unwrap();
    let mtx = dir.path().join("a.mtx");
    let csv = dir.path().join("a.csv");
    let back = dir.path().join("b.mtx");
    let coord = dir.path().join("c.mtx");
    ok(&["synth", "--rows", "10", "--cols", "7", "--rank", "3", "--noise", "0.1", "--seed", "4", "--out", p(&mtx)]);
    ok(&["convert", "--input", p(&mtx), "--out", p(&csv)]);
    ok(&["convert", "--input", p(&csv), "--out", p(&back)]);
    assert_eq!(fs::read(&mtx).unwrap(), fs::read(&back).unwrap());
    ok(&["convert", "--input", p(&back), "--out", p(&coord), "--to", "coordinate"]);
    let again = dir.path().join("d.csv");
    ok(&["convert", "--input", p(&coord), "--out", p(&again)]);
    assert_eq!(fs::read(&csv).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn same_seed_gives_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let mtx = dir.path().join("a.mtx");
    ok(&["synth", "--rows", "30", "--cols", "20", "--rank", "4", "--noise", "0.05", "--seed", "1", "--out", p(&mtx)]);
    let r1 = dir.path().join("r1.json");
    let r2 = dir.path().join("r2.json");
    let sweep = ["eval", "--input", p(&mtx), "--k", "4", "--c", "6,10", "--trials", "3", "--groups", "4", "--seed", "9"];
    ok(&[&sweep[..], &["--out", p(&r1)]].concat());
    ok(&[&sweep[..], &["--out", p(&r2), "--csv", p(&dir.path().join("s.csv"))]].concat());
    assert_eq!(fs::read(&r1).unwrap(), fs::read(&r2).unwrap());

    let report = json(&fs::read_to_string(&r1).unwrap());
    for key in ["schema_version", "input", "params", "sweep", "seed", "timing"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    assert!(report["timing"].is_null());
    let sweep_rows = report["sweep"].as_array().unwrap();
    assert_eq!(sweep_rows.len(), 2);
    assert!(sweep_rows.iter().all(|r| r["theta2"]["min"].as_f64().unwrap() >= 1.0 - 1e-10));
    let csv = fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);

    for cmd in [
        vec!["cx", "--input", p(&mtx), "--k", "4", "--seed", "2"],
        vec!["cur", "--input", p(&mtx), "--k", "4", "--c", "8", "--seed", "2", "--delta", "0.1"],
    ] {
        assert_eq!(ok(&cmd), ok(&cmd));
    }
}

#[test]
fn decompositions_report_consistent_errors() {
    let dir = tempfile::tempdir().unwrap();
    let mtx = dir.path().join("a.mtx");
    ok(&["synth", "--rows", "25", "--cols", "18", "--rank", "3", "--spectrum", "geometric:0.5", "--noise", "0.01", "--out", p(&mtx)]);
    let cx = json(&ok(&["cx", "--input", p(&mtx), "--k", "3", "--method", "exactly", "--rank-k", "--delta", "0.3"]));
    assert_eq!(cx["c"], 9);
    assert_eq!(cx["columns"]["selected"], 9);
    assert_eq!(cx["boosting"]["trials"], 2);
    assert!(cx["error_rank_k_frob"].as_f64().unwrap() >= cx["error_frob"].as_f64().unwrap() - 1e-10);

    let factors = dir.path().join("factors");
    let cur = json(&ok(&["cur", "--input", p(&mtx), "--k", "3", "--c", "9", "--save-factors", p(&factors)]));
    assert_eq!(cur["r"], 18);
    assert!(cur["error_frob"].as_f64().unwrap() >= cur["cx_error_frob"].as_f64().unwrap() - 1e-10);
    for f in ["C.mtx", "U.mtx", "R.mtx"] {
        assert!(factors.join(f).exists());
    }

    let worst = json(&ok(&["cx", "--input", p(&mtx), "--k", "3", "--epsilon", "0.5"]));
    assert_eq!(worst["worst_case_columns"].as_f64().unwrap(), 115_200.0);
}

#[test]
fn regression_and_matmul_commands() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    ok(&["synth", "--rows", "40", "--cols", "6", "--rank", "3", "--out", p(&a)]);
    ok(&["synth", "--rows", "40", "--cols", "2", "--rank", "2", "--seed", "5", "--out", p(&b)]);
    let exact = json(&ok(&["regress", "--a", p(&a), "--b", p(&b), "--exact"]));
    assert_eq!(exact["residual_frob"], exact["optimal_residual_frob"]);
    let x = dir.path().join("x.mtx");
    let sampled = json(&ok(&["regress", "--a", p(&a), "--b", p(&b), "--k", "3", "--r", "30", "--save-x", p(&x)]));
    assert_eq!(sampled["k"], 3);
    assert!(sampled["residual_frob"].as_f64().unwrap() >= exact["residual_frob"].as_f64().unwrap() - 1e-10);
    assert!(sampled["diagnostics"]["kappa"].as_f64().unwrap() >= 1.0);
    assert!(x.exists());

    let at = dir.path().join("at.csv");
    ok(&["synth", "--rows", "6", "--cols", "40", "--rank", "3", "--out", p(&at)]);
    let mm = json(&ok(&["matmul", "--a", p(&at), "--b", p(&a), "--c", "10", "--trials", "4", "--exact", "--probs", "column-norm"]));
    assert_eq!(mm["errors"].as_array().unwrap().len(), 4);
    assert!(mm["bound"].as_f64().unwrap() > 0.0);
}

#[test]
fn bad_input_exits_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.mtx");
    let out = relcur(&["cx", "--input", p(&missing), "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "1,2\n3,oops\n").unwrap();
    let out = relcur(&["cx", "--input", p(&bad), "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let good = dir.path().join("good.csv");
    fs::write(&good, "1,2\n3,4\n").unwrap();
    assert_eq!(relcur(&["cx", "--input", p(&good), "--k", "3"]).status.code(), Some(2));
    assert_eq!(relcur(&["cx", "--input", p(&good), "--k", "1", "--delta", "1.5"]).status.code(), Some(2));
    assert_eq!(relcur(&["synth", "--rows", "2", "--cols", "2", "--rank", "0"]).status.code(), Some(2));
    assert_eq!(relcur(&["regress", "--a", p(&good), "--b", p(&bad)]).status.code(), Some(2));
}
