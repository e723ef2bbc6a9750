//! A spherical PML tensor sampled over its layer: a normal field certified by
//! eigenphases, with the coefficient phases checked radius by radius.

use elliptic_media::media::{pml_phases, ProfileKind, SigmaProfile, SphericalLayerParams};
use elliptic_media::{certify, CatalogModel, CertifyOptions, MaterialField, Result};

pub fn run_example() -> Result<()> {
    let params = SphericalLayerParams::pml(
        1.0,
        2.0,
        SigmaProfile::new(ProfileKind::Quadratic, 5.0),
        1.0,
    );
    let field = MaterialField::parametric(
        "pml_eps",
        CatalogModel::SphericalPml,
        Some("eps"),
        serde_json::to_value(&params)?,
        None,
    )?
    .materialize()?;

    let cert = certify(&field, &CertifyOptions::default())?;
    println!(
        "{} samples, class {:?}, method {:?}",
        cert.sample_count, cert.class, cert.method
    );
    println!("eigenphase range {:?}", cert.phase_range);
    println!("Θ = {}", cert.theta_set);

    for r in [1.0, 1.25, 1.5, 1.75, 2.0] {
        let p = pml_phases(r, &params)?;
        println!(
            "r = {r:.2}: φ₁ = {:.4}, φ₂ = {:.4}, bound holds: {}",
            p.phi1, p.phi2, p.ok
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
