//! Certifies a conducting medium whose conductivity varies over the samples:
//! the closed form from the phase range, checked against a numeric scan.

use elliptic_media::certify::theta_set_numeric;
use elliptic_media::media::{lossy_fields, LossyIsotropicParams};
use elliptic_media::{certify, CertifyOptions, Complex, ComplexTensor, Result, SampledField};

pub fn run_example() -> Result<()> {
    let mut params = LossyIsotropicParams::constant(2.0, 0.0, 1.0, 1.5);
    params.sigma_profile = Some(vec![0.0, 0.4, 1.1, 2.5]);
    let (eps, _mu) = lossy_fields(&params)?;

    let cert = certify(&eps, &CertifyOptions::default())?;
    println!("method {:?}, sharp {}", cert.method, cert.sharp);
    println!("phase range {:?}", cert.phase_range);
    println!("Θ = {}", cert.theta_set);
    println!(
        "best constant {:.6} at θ = {:.6}",
        cert.xi_minus_max.unwrap_or(f64::NAN),
        cert.best_direction.unwrap_or(f64::NAN)
    );

    let scanned = theta_set_numeric(&eps, 4096)?;
    let dev = cert
        .theta_set
        .max_endpoint_deviation(&scanned)
        .unwrap_or(f64::INFINITY);
    println!("scan agrees to {dev:.2e}");

    // a purely imaginary coefficient
    let imag = SampledField::constant(
        "imaginary",
        ComplexTensor::scalar(3, Complex::new(0.0, 1.0))?,
    );
    println!(
        "Θ(i) = {}",
        certify(&imag, &CertifyOptions::default())?.theta_set
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
