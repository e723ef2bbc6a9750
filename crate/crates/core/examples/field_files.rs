//! Field and problem files on disk, driven through the command-line entry
//! point: certificate, coercivity report and the c(θ) curve.

use std::fs;

use elliptic_media::{cli, Complex, ComplexTensor, MaterialField, Result, Sample};

pub fn run_example() -> Result<()> {
    let dir = tempfile::tempdir()?;
    let c = Complex::new;

    // an explicit two-sample permittivity and a constant permeability
    let eps = MaterialField::explicit(
        "eps",
        vec![
            Sample::new("core", ComplexTensor::scalar(3, c(2.0, 0.5))?),
            Sample::new("shell", ComplexTensor::scalar(3, c(1.0, 1.5))?),
        ],
    )?;
    let mu = MaterialField::constant("mu", ComplexTensor::identity(3)?);
    fs::write(
        dir.path().join("eps.json"),
        serde_json::to_string_pretty(&eps)?,
    )?;
    fs::write(
        dir.path().join("mu.json"),
        serde_json::to_string_pretty(&mu)?,
    )?;
    fs::write(
        dir.path().join("problem.json"),
        r#"{"bc": "dirichlet", "omega": 2.0, "eps": {"path": "eps.json"}, "mu": {"path": "mu.json"}}"#,
    )?;

    let p = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let code = cli::run([
        "elliptic-media",
        "certify",
        "--input",
        &p("eps.json"),
        "--output",
        &p("cert.json"),
    ]);
    println!("certify exit code {code}");
    let cert: serde_json::Value = serde_json::from_str(&fs::read_to_string(p("cert.json"))?)?;
    println!("Θ(eps) = {}", cert["theta_set"]);

    let code = cli::run([
        "elliptic-media",
        "coercivity",
        "--input",
        &p("problem.json"),
        "--output",
        &p("report.json"),
        "--curve",
        &p("curve.csv"),
        "--grid",
        "360",
    ]);
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(p("report.json"))?)?;
    println!(
        "coercivity exit code {code}: θ* = {}, c* = {}",
        report["theta_star"], report["c_star"]
    );
    let curve = fs::read_to_string(p("curve.csv"))?;
    println!(
        "curve: {} rows, header `{}`",
        curve.lines().count() - 1,
        curve.lines().next().unwrap_or("")
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
