//! Dirichlet problem in a conducting medium: optimal coercivity direction
//! and constant, then the same problem without losses.

use elliptic_media::media::{lossy_fields, LossyIsotropicParams};
use elliptic_media::{BoundaryCondition, CertifyOptions, Problem, ProblemSpec, Result};

fn problem(sigma: f64) -> Result<Problem> {
    let (eps, mu) = lossy_fields(&LossyIsotropicParams::constant(1.0, sigma, 1.0, 1.0))?;
    let spec = ProblemSpec::new(
        BoundaryCondition::Dirichlet,
        1.0,
        eps.to_definition(),
        mu.to_definition(),
    );
    Problem::from_spec(&spec, &CertifyOptions::default())
}

pub fn run_example() -> Result<()> {
    // ε_c = 1 + i, μ = ω = 1
    let lossy = problem(1.0)?;
    let report = lossy.report();
    println!("common directions {}", report.theta_common);
    let (theta, c) = (report.theta_star.unwrap(), report.c_star.unwrap());
    println!(
        "θ* = {theta:.9} (−π + arctan 2 = {:.9})",
        -std::f64::consts::PI + 2f64.atan()
    );
    println!("c* = {c:.9} (1/√5 = {:.9})", 5f64.sqrt().recip());
    if let Some(b) = report.breakdown {
        println!(
            "curl {:.6}, mass {:.6}, ratio bound {:.6}",
            b.curl_term, b.mass_term, b.ratio_bound
        );
    }
    println!("{}", report.verdict_text);

    let lossless = problem(0.0)?.report();
    println!(
        "without losses: Θ common = {}, {}",
        lossless.theta_common, lossless.verdict_text
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
