//! Certificates of `ξ⁻¹` and `αξ` derived from the certificate of `ξ`,
//! compared with certifying the transformed samples directly.

use elliptic_media::certify::{
    inverse_certificate, scale_certificate, theta_set_numeric, xi_minus,
};
use elliptic_media::{certify, CertifyOptions, Complex, ComplexTensor, Result, SampledField};

pub fn run_example() -> Result<()> {
    let c = Complex::new;
    let z = c(0.0, 0.0);
    let xi = ComplexTensor::from_rows(&[
        [c(2.0, 1.0), c(0.5, 0.0), z],
        [z, c(1.5, 0.5), c(0.3, 0.0)],
        [c(0.1, 0.0), z, c(1.0, 0.2)],
    ])?;
    let field = SampledField::constant("xi", xi);
    let opts = CertifyOptions::default();
    let cert = certify(&field, &opts)?;
    println!("Θ(ξ) = {} by {:?}", cert.theta_set, cert.method);

    let inv = inverse_certificate(&cert)?;
    let direct = theta_set_numeric(&field.map_tensors("xi_inv", |t| t.inverse())?, opts.grid)?;
    println!("Θ(ξ⁻¹) = {}  (direct scan {direct})", inv.theta_set);
    println!(
        "norm bracket {:?}, true norm {:.6}",
        inv.xi_plus_bracket,
        xi.inverse()?.operator_norm()
    );

    let alpha = Complex::from_polar(2.0, 0.7);
    let scaled = scale_certificate(&cert, alpha)?;
    println!("Θ(αξ) = {}", scaled.theta_set);

    // the derived lower bound never exceeds the directly computed constant
    let theta = inv.best_direction.unwrap_or(0.0);
    let bound = inv.xi_minus_bound(&field, theta)?;
    let actual = xi_minus(&field.map_tensors("xi_inv", |t| t.inverse())?, theta)?;
    println!("at θ = {theta:.4}: bound {bound:.6} ≤ actual {actual:.6}");
    assert!(bound <= actual + 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
