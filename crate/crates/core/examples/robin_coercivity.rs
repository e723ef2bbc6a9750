//! Robin problem: the boundary coefficient adds a third term, and directions
//! outside the common set are refused with the offending terms.

use std::f64::consts::PI;

use elliptic_media::media::{lossy_fields, LossyIsotropicParams};
use elliptic_media::{
    BoundaryCondition, CertifyOptions, Complex, ComplexTensor, MaterialField, Problem, ProblemSpec,
    Result,
};

pub fn run_example() -> Result<()> {
    let (eps, mu) = lossy_fields(&LossyIsotropicParams::constant(1.0, 1.0, 1.0, 1.0))?;
    let alpha = ComplexTensor::scalar(2, Complex::from_polar(1.0, 9.0 * PI / 8.0))?;
    let spec = ProblemSpec::new(
        BoundaryCondition::Robin,
        1.0,
        eps.to_definition(),
        mu.to_definition(),
    )
    .with_alpha(MaterialField::constant("alpha", alpha));
    let problem = Problem::from_spec(&spec, &CertifyOptions::default())?;

    // arg α beyond π trims the common set from above
    let common = problem.theta_common()?;
    println!("Θ(α) = {}", problem.cert_alpha.as_ref().unwrap().theta_set);
    println!("common directions {common}");

    let inside = -11.0 * PI / 16.0;
    let b = problem.coercivity_constant(inside)?;
    println!(
        "θ = {inside:.4}: curl {:.6}, mass {:.6}, boundary {:.6} → c = {:.6}",
        b.curl_term,
        b.mass_term,
        b.boundary_term.unwrap_or(f64::NAN),
        b.c
    );

    match problem.coercivity_constant(-9.0 * PI / 16.0) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("refused: {e}"),
    }

    let best = problem.maximize()?;
    println!("θ* = {:.6}, c* = {:.6}", best.theta_star, best.c_star);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
