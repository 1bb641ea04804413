use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn shearlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shearlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_model(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# shearlab-csv v1"));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn hencky_sweep_is_pure_shear() {
    let out = shearlab(&[
        "sweep", "--model", "hencky", "--param", "mu=1", "--param", "lambda=1", "--family",
        "pure-shear-stretch", "--min", "-1", "--max", "1", "--steps", "11",
    ]);
    assert_eq!(code(&out), 0);
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(header.len(), 25);
    assert_eq!(rows.len(), 11);
    let (p, pure, s) = (column(&header, "param"), column(&header, "pure"), column(&header, "s"));
    for row in &rows {
        assert_eq!(row[pure], "true");
        let alpha: f64 = row[p].parse().unwrap();
        let sv: f64 = row[s].parse().unwrap();
        assert!((sv - 2.0 * alpha).abs() < 1e-9, "{alpha} {sv}");
    }
}

#[test]
fn blatz_ko_sweep_is_never_pure() {
    let out = shearlab(&[
        "sweep", "--model", "blatz-ko", "--family", "pure-shear-stretch", "--min", "0.1", "--max", "1",
        "--steps", "10",
    ]);
    assert_eq!(code(&out), 0);
    let (header, rows) = csv_rows(&stdout(&out));
    let pure = column(&header, "pure");
    assert!(rows.iter().all(|r| r[pure] == "false"));
}

#[test]
fn simple_shear_sweep_flags_poynting() {
    let out = shearlab(&[
        "sweep", "--model", "neo-log", "--family", "simple-shear", "--min", "0.5", "--max", "1", "--steps", "2",
    ]);
    let (header, rows) = csv_rows(&stdout(&out));
    let (pure, poynting, planar) = (column(&header, "pure"), column(&header, "poynting"), column(&header, "planar"));
    for r in &rows {
        assert_eq!(r[pure], "false");
        assert_eq!(r[poynting], "positive");
        assert_eq!(r[planar], "true");
    }
}

#[test]
fn sweep_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = shearlab(&[
            "sweep", "--model", "exp-hencky", "--family", "left-finite-shear", "--steps", "64", "--format",
            "json", "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        assert!(out.stdout.is_empty());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_slice(&ta).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 64);
    let params: Vec<f64> = rows.iter().map(|r| r["param"].as_f64().unwrap()).collect();
    assert!(params.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(params[0], -1.0);
    assert_eq!(params[63], 1.0);
}

#[test]
fn invalid_sweep_arguments_are_usage_errors() {
    assert_eq!(code(&shearlab(&["sweep", "--model", "hencky", "--steps", "1"])), 2);
    assert_eq!(code(&shearlab(&["sweep", "--model", "hencky", "--min", "1", "--max", "1"])), 2);
    assert_eq!(code(&shearlab(&["sweep", "--model", "hencky", "--family", "twist"])), 2);
    assert_eq!(code(&shearlab(&["sweep", "--model", "hencky", "--param", "mu"])), 2);
    assert_eq!(code(&shearlab(&["sweep"])), 2);
}

#[test]
fn model_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_model(dir.path(), "bad.json", "{\"model\": \"hencky\", \"params\": {\"mu\": -1}}");
    let garbled = write_model(dir.path(), "garbled.json", "{ not json");
    assert_eq!(code(&shearlab(&["audit", &bad])), 3);
    assert_eq!(code(&shearlab(&["audit", &garbled])), 3);
    assert_eq!(code(&shearlab(&["audit", "no-such-model"])), 3);
    assert_eq!(code(&shearlab(&["sweep", "--model", "hencky", "--param", "nu=0.3"])), 3);
    assert_eq!(code(&shearlab(&["monotonicity", "becker"])), 3);
}

#[test]
fn audit_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let hencky = write_model(dir.path(), "hencky.json", "{\"model\": \"hencky\", \"params\": {\"mu\": 1, \"lambda\": 1}}");
    let out = shearlab(&["audit", &hencky]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["compatibility"]["stretch"]["pass"], true);
    assert_eq!(v["growth_class_verified"], false);

    assert_eq!(code(&shearlab(&["audit", "--model", "blatz-ko"])), 1);
    assert_eq!(code(&shearlab(&["audit", "becker", "--param", "lambda=3"])), 0);
}

#[test]
fn audit_is_deterministic_under_seed() {
    let a = shearlab(&["audit", "neo-log", "--seed", "11"]);
    let b = shearlab(&["audit", "neo-log", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn invert_neo_log() {
    let dir = tempfile::tempdir().unwrap();
    let neolog = write_model(dir.path(), "neolog.json", "{\"model\": \"neo-log\", \"params\": {\"mu\": 1}}");
    let out = shearlab(&["invert", &neolog, "--s", "1"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let b = &v["b"];
    assert!((b["p"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!((b["q"].as_f64().unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-10);
    assert!((b["r"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert_eq!(v["converged"], true);
}

#[test]
fn invert_non_convergence_exits_one() {
    let out = shearlab(&["invert", "hencky", "--s", "0.5", "--max-iterations", "1"]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["converged"], false);
}

#[test]
fn invert_multistart_reports_roots() {
    let out = shearlab(&["invert", "hencky", "--s", "0.5", "--multistart"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(!v["roots"].as_array().unwrap().is_empty());
}

#[test]
fn monotonicity_neo_log() {
    let out = shearlab(&["monotonicity", "neo-log", "--min", "0", "--max", "2", "--steps", "5"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    for row in v["rows"].as_array().unwrap() {
        assert_eq!(row["sigma12"].as_f64(), row["gamma"].as_f64());
    }
}

#[test]
fn linearize_slopes() {
    let out = shearlab(&["linearize", "left-finite-shear", "--alphas", "1e-1,1e-2,1e-3"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let slope = v["families"][0]["slope"].as_f64().unwrap();
    assert!((slope - 2.0).abs() <= 0.05);

    let all = shearlab(&["linearize"]);
    let v: Value = serde_json::from_str(&stdout(&all)).unwrap();
    assert_eq!(v["families"].as_array().unwrap().len(), 4);
    assert_eq!(code(&shearlab(&["linearize", "twist"])), 2);
    assert_eq!(code(&shearlab(&["linearize", "--alphas", "1e-2"])), 2);
}

#[test]
fn models_catalogue() {
    let out = shearlab(&["models"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"hencky") && names.contains(&"becker"));
    assert_eq!(names.len(), 8);
}
