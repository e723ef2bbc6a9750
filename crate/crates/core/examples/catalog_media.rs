//! Every catalog model with its example parameters, certified; plus the
//! ferrite eigenvalues and the two cloak variants.

use elliptic_media::media::{ferrite_mu, FerriteParams};
use elliptic_media::{certify, CatalogModel, CertifyOptions, MaterialField, Result};
use serde_json::json;

pub fn run_example() -> Result<()> {
    let opts = CertifyOptions::default();
    for model in CatalogModel::ALL {
        for q in model.quantities() {
            let field = model.example_field(Some(q))?.materialize()?;
            let cert = certify(&field, &opts)?;
            println!(
                "{:<16} {:<6} {:>3} samples  {:<10?} {:<20?} Θ = {}",
                model.id(),
                q,
                field.samples.len(),
                cert.class,
                cert.method,
                cert.theta_set
            );
        }
    }

    let ferrite = FerriteParams::new(2.0, 1.0, 1.0);
    println!(
        "ferrite eigenvalues {:?} (formula {:?}), positive definite: {}",
        ferrite_mu(&ferrite)?.eig_hermitian()?,
        ferrite.eigenvalues(),
        ferrite.positive_definite()
    );

    for clamp in [json!(null), json!(1e-3)] {
        let field = MaterialField::parametric(
            "cloak",
            CatalogModel::SphericalCloak,
            None,
            json!({"R1": 1.0, "R2": 2.0, "clamp_eps": clamp}),
            None,
        )?
        .materialize()?;
        let cert = certify(&field, &opts)?;
        let witness = cert
            .witnesses
            .first()
            .map(|w| w.sample.as_str())
            .unwrap_or("-");
        println!(
            "cloak clamp {clamp}: Θ = {}, witness {witness}",
            cert.theta_set
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
