//! The binary's exit codes and output formats.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use elliptic_media::{Complex, ComplexTensor, MaterialField, Sample};
use serde_json::Value;
use tempfile::TempDir;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elliptic-media"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write_scalar_field(dir: &TempDir, name: &str, values: &[Complex]) -> PathBuf {
    let samples = values
        .iter()
        .enumerate()
        .map(|(k, &v)| Sample::new(format!("s{k}"), ComplexTensor::scalar(3, v).unwrap()))
        .collect();
    let f = MaterialField::explicit(name, samples).unwrap();
    let path = dir.path().join(format!("{name}.json"));
    fs::write(&path, serde_json::to_string(&f).unwrap()).unwrap();
    path
}

fn problem(dir: &TempDir, eps: Complex) -> PathBuf {
    write_scalar_field(dir, "eps", &[eps]);
    write_scalar_field(dir, "mu", &[Complex::new(1.0, 0.0)]);
    let path = dir.path().join("problem.json");
    fs::write(
        &path,
        r#"{"bc": "dirichlet", "omega": 1.0, "eps": {"path": "eps.json"}, "mu": {"path": "mu.json"}}"#,
    )
    .unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn certify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = write_scalar_field(&dir, "good", &[Complex::new(2.0, 1.0)]);
    let out = bin(&["certify", "--input", s(&good)]);
    assert_eq!(code(&out), 0);
    let cert = stdout_json(&out);
    assert_eq!(cert["method"], "closed_form_scalar");
    assert!(cert["theta_set"].as_array().is_some_and(|a| a.len() == 1));

    let bad = write_scalar_field(
        &dir,
        "bad",
        &[Complex::new(1.0, 0.0), Complex::new(-1.0, 0.0)],
    );
    let out = bin(&["certify", "--input", s(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(!stdout_json(&out)["witnesses"]
        .as_array()
        .unwrap()
        .is_empty());

    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\"name\": \"x\",\n  \"samples\": [}").unwrap();
    let out = bin(&["certify", "--input", s(&broken)]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");

    assert_eq!(
        code(&bin(&["certify", "--input", "/nonexistent/field.json"])),
        1
    );
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(code(&bin(&["certify"])), 1);
    assert_eq!(code(&bin(&["frobnicate"])), 1);
    assert_eq!(
        code(&bin(&["theta", "--input", "x.json", "--grid", "4"])),
        1
    );
    assert_eq!(code(&bin(&["--help"])), 0);
}

#[test]
fn theta_csv_and_degrees() {
    let dir = TempDir::new().unwrap();
    let f = write_scalar_field(&dir, "eps", &[Complex::new(0.0, 3.0)]);
    let out = bin(&["theta", "--input", s(&f), "--format", "csv", "--grid", "64"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,xi_minus,in_set"));
    assert_eq!(lines.count(), 64);

    let out = bin(&["certify", "--input", s(&f), "--degrees"]);
    let cert = stdout_json(&out);
    assert_eq!(cert["angle_unit"], "degrees");
    let arc = &cert["theta_set"][0];
    assert!((arc["start"].as_f64().unwrap() + 180.0).abs() < 1e-9);
    assert!(arc["end"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn coercivity_exit_codes_and_curve() {
    let dir = TempDir::new().unwrap();
    let lossy = problem(&dir, Complex::new(1.0, 1.0));
    let curve = dir.path().join("curve.csv");
    let report = dir.path().join("report.json");
    let out = bin(&[
        "coercivity",
        "--input",
        s(&lossy),
        "--curve",
        s(&curve),
        "--output",
        s(&report),
        "--grid",
        "128",
    ]);
    assert_eq!(code(&out), 0);
    let r: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert!((r["c_star"].as_f64().unwrap() - 1.0 / 5f64.sqrt()).abs() < 1e-6);
    let text = fs::read_to_string(&curve).unwrap();
    assert_eq!(text.lines().next(), Some("theta,curl,mass,boundary,c"));
    assert_eq!(text.lines().count(), 129);

    let lossless = problem(&dir, Complex::new(1.0, 0.0));
    let out = bin(&["coercivity", "--input", s(&lossless)]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Fredholm"));
}

#[test]
fn failed_run_leaves_no_output() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("out.json");
    let out = bin(&[
        "certify",
        "--input",
        "/nonexistent.json",
        "--output",
        s(&target),
    ]);
    assert_eq!(code(&out), 1);
    assert!(!target.exists());
    let leftovers = fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 0);
}

#[test]
fn media_list_and_emit() {
    let out = bin(&["media", "list"]);
    assert_eq!(code(&out), 0);
    let ids: Vec<String> = stdout_json(&out)
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["id"].as_str().unwrap().to_string())
        .collect();
    assert!(ids.contains(&"spherical_cloak".to_string()));

    let dir = TempDir::new().unwrap();
    let emitted = dir.path().join("cloak.json");
    let out = bin(&[
        "media",
        "emit",
        "spherical_cloak",
        "--params",
        r#"{"R1": 1.0, "R2": 2.0, "clamp_eps": null}"#,
        "--output",
        s(&emitted),
    ]);
    assert_eq!(code(&out), 0);
    let out = bin(&["certify", "--input", s(&emitted)]);
    assert_eq!(code(&out), 2);
    assert_eq!(code(&bin(&["media", "emit", "no_such_model"])), 1);
}

#[test]
fn verify_detects_perturbation() {
    let out = bin(&["verify", "--perturb"]);
    assert_eq!(code(&out), 4);
    let report = stdout_json(&out);
    assert!(report["failed"].as_u64().unwrap() > 0);
    assert_eq!(report["perturbed"], true);
}
