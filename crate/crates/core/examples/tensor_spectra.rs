//! Structural classes and spectra of complex 3×3 tensors, and the smallest
//! eigenvalue of the rotated Hermitian part as a function of the direction.

use std::f64::consts::PI;

use elliptic_media::certify::xi_minus;
use elliptic_media::media::{gyrotropic_eigenvalues, gyrotropic_tensor, GyrotropicParams};
use elliptic_media::{Complex, ComplexTensor, Result, SampledField};

fn show(values: &[Complex]) -> String {
    let parts: Vec<String> = values.iter().map(|v| format!("{:.4}", v)).collect();
    parts.join(", ")
}

pub fn run_example() -> Result<()> {
    let c = Complex::new;
    let z = c(0.0, 0.0);

    let params = GyrotropicParams {
        eps1: c(1.0, 0.5),
        eps2: c(0.0, 0.2),
        eps3: c(2.0, 0.0),
        scale: 1.0,
    };
    let gyro = gyrotropic_tensor(&params)?;
    println!("gyrotropic: {:?}", gyro.classify());
    println!("  eigenvalues {}", show(&gyro.eig_general()));
    println!("  ε₁ ± ε₂, ε₃ {}", show(&gyrotropic_eigenvalues(&params)));

    let herm = ComplexTensor::from_rows(&[
        [c(2.0, 0.0), c(0.0, 1.0), z],
        [c(0.0, -1.0), c(2.0, 0.0), z],
        [z, z, c(1.0, 0.0)],
    ])?;
    println!(
        "hermitian: {:?} {:?}",
        herm.classify(),
        herm.eig_hermitian()?
    );

    let general = ComplexTensor::from_rows(&[
        [c(1.0, 0.0), c(2.0, 0.0), z],
        [z, c(1.0, 1.0), z],
        [z, z, c(0.0, 2.0)],
    ])?;
    println!(
        "non-normal: {:?} [{}], operator norm {:.6}",
        general.classify(),
        show(&general.eig_general()),
        general.operator_norm()
    );

    // ξ₋(θ) of the gyrotropic tensor on a few directions
    let field = SampledField::constant("gyro", gyro);
    for k in 0..8 {
        let theta = -PI + k as f64 * PI / 4.0;
        println!("  θ = {theta:+.4}  ξ₋ = {:+.6}", xi_minus(&field, theta)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
