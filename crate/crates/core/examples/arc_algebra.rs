//! Sets of directions as unions of arcs: construction, set operations and
//! the `[-π, π]` presentation used in reports.

use std::f64::consts::{FRAC_PI_2, PI};

use elliptic_media::{ArcSet, Result};

pub fn run_example() -> Result<()> {
    let right = ArcSet::open(-FRAC_PI_2, FRAC_PI_2)?;
    let lower = ArcSet::open(-PI, 0.0)?;

    let quarter = right.intersect(&lower);
    println!("{right} ∩ {lower} = {quarter}");
    assert!(quarter.approx_eq(&ArcSet::open(-FRAC_PI_2, 0.0)?, 1e-12));

    // one arc on the circle, two intervals once cut at ±π
    let seam = ArcSet::open(3.0, 3.5)?;
    println!(
        "{seam}: {} arc, {} presented intervals",
        seam.arcs().len(),
        seam.presented().len()
    );

    let union = right.union(&seam);
    println!("{union} has measure {:.6}", union.measure());

    // θ ∈ shift(β) iff θ + β is in the original set
    assert!(right.shift(FRAC_PI_2).approx_eq(&lower, 1e-12));
    assert!(lower.negate().approx_eq(&ArcSet::open(0.0, PI)?, 1e-12));

    // open endpoints become closed in the complement
    let comp = right.complement();
    println!("complement of {right} is {comp}");
    assert!(comp.contains(FRAC_PI_2) && !right.contains(FRAC_PI_2));

    println!("as JSON: {}", serde_json::to_string(&seam)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
