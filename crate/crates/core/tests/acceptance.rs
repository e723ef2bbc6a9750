//! Acceptance criteria, one PASS/FAIL line each. Oracles are computed here
//! (nalgebra spectra, analytic phase formulas, a raw-interval membership
//! test) rather than taken from the library.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use elliptic_media::arcset::ANGLE_TOL;
use elliptic_media::certify::{interior_directions, theta_set_numeric};
use elliptic_media::media::{
    ferrite_mu, pml_phases, FerriteParams, ProfileKind, SigmaProfile, SphericalLayerParams,
};
use elliptic_media::{
    certify, ArcSet, BoundaryCondition, CatalogModel, CertifyOptions, Complex, ComplexTensor,
    MaterialField, Method, Problem, ProblemSpec, Sample, SampledField,
};
use nalgebra::{Matrix3, Schur, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

type M3 = Matrix3<Complex>;

const N: usize = 4096;

fn scan_tol() -> f64 {
    2.0 * TAU / N as f64 + 1e-8
}

fn opts() -> CertifyOptions {
    CertifyOptions::default()
}

// ------------------------------------------------------------ oracles

fn to_na(t: &ComplexTensor) -> M3 {
    M3::from_fn(|i, j| t.get(i, j))
}

fn from_na(m: &M3) -> ComplexTensor {
    ComplexTensor::from_fn(3, |i, j| m[(i, j)]).unwrap()
}

/// Smallest eigenvalue of the Hermitian part of `e^{iθ}ξ`.
fn na_xi_minus(t: &ComplexTensor, theta: f64) -> f64 {
    let m = to_na(t) * Complex::from_polar(1.0, theta);
    let h = (m + m.adjoint()) * Complex::new(0.5, 0.0);
    SymmetricEigen::new(h).eigenvalues.min()
}

fn na_norm(t: &ComplexTensor) -> f64 {
    to_na(t).svd(false, false).singular_values.max()
}

fn na_eigenvalues(t: &ComplexTensor) -> Vec<Complex> {
    let schur = Schur::new(to_na(t));
    let (_, tri) = schur.unpack();
    (0..3).map(|i| tri[(i, i)]).collect()
}

fn random_c(rng: &mut ChaCha8Rng) -> Complex {
    Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn random_m3(rng: &mut ChaCha8Rng) -> M3 {
    M3::from_fn(|_, _| random_c(rng))
}

fn random_unitary(rng: &mut ChaCha8Rng) -> M3 {
    random_m3(rng).qr().q()
}

fn field(name: &str, tensors: Vec<ComplexTensor>) -> SampledField {
    let samples = tensors
        .into_iter()
        .enumerate()
        .map(|(k, t)| Sample::new(format!("x{k}"), t))
        .collect();
    SampledField::new(name, samples).unwrap()
}

fn scalar_field(values: &[Complex], dim: usize) -> SampledField {
    field(
        "scalar",
        values
            .iter()
            .map(|&v| ComplexTensor::scalar(dim, v).unwrap())
            .collect(),
    )
}

/// Open arc `]lo, hi[` read on the real line.
fn arc(lo: f64, hi: f64) -> ArcSet {
    ArcSet::open(lo, hi).unwrap()
}

fn dev(a: &ArcSet, b: &ArcSet) -> f64 {
    a.max_endpoint_deviation(b).unwrap_or(f64::INFINITY)
}

/// Three samples `e^{iβ_k}(GGᴴ + δI + K)` that the oracle confirms elliptic
/// at some scan direction.
fn random_elliptic(rng: &mut ChaCha8Rng, name: &str) -> SampledField {
    loop {
        let beta = rng.random_range(-PI..PI);
        let tensors: Vec<ComplexTensor> = (0..3)
            .map(|_| {
                let g = random_m3(rng);
                let k = random_m3(rng) * Complex::new(rng.random_range(0.0..0.5), 0.0);
                let p = g * g.adjoint()
                    + M3::identity() * Complex::new(rng.random_range(0.2..1.0), 0.0);
                let b = beta + rng.random_range(-0.3..0.3);
                from_na(&((p + k) * Complex::from_polar(1.0, b)))
            })
            .collect();
        let elliptic = (0..256).any(|i| {
            let t = -PI + TAU * i as f64 / 256.0;
            tensors.iter().all(|x| na_xi_minus(x, t) > 1e-3)
        });
        if elliptic {
            return field(name, tensors);
        }
    }
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

// ------------------------------------------------------------ criteria

fn c1_scalar_closed_forms() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst: f64 = 0.0;
    let mut formula_worst: f64 = 0.0;
    let mut bad = Vec::new();
    for case in 0..200 {
        let lo = rng.random_range(-PI..PI);
        let width = rng.random_range(0.0..PI - 0.02);
        let mut phases = vec![lo, lo + width];
        for _ in 0..rng.random_range(0..4) {
            phases.push(lo + width * rng.random::<f64>());
        }
        let values: Vec<Complex> = phases
            .iter()
            .map(|&p| Complex::from_polar(rng.random_range(0.1..10.0), p))
            .collect();
        let f = scalar_field(&values, 1);
        let cert = certify(&f, &opts()).unwrap();
        let numeric = theta_set_numeric(&f, N).unwrap();
        let d = dev(&cert.theta_set, &numeric);
        let expected = arc(-FRAC_PI_2 - lo, FRAC_PI_2 - lo - width);
        formula_worst = formula_worst.max(dev(&cert.theta_set, &expected));
        worst = worst.max(d);
        if cert.method != Method::ClosedFormScalar || d > scan_tol() {
            bad.push(case);
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && formula_worst <= 1e-12 && elapsed <= Duration::from_secs(60),
        format!(
            "200 cases, closed vs scan max {worst:.2e} (tol {:.2e}), vs formula {formula_worst:.1e}, {:.1}s, failing {bad:?}",
            scan_tol(),
            elapsed.as_secs_f64()
        ),
    )
}

fn c2_canonical_sets() -> Outcome {
    let c = Complex::new;
    let cases = [
        (
            "positive real",
            vec![c(3.0, 0.0)],
            arc(-FRAC_PI_2, FRAC_PI_2),
        ),
        (
            "negative real",
            vec![c(-0.5, 0.0)],
            arc(FRAC_PI_2, 1.5 * PI),
        ),
        ("positive imaginary", vec![c(0.0, 2.0)], arc(-PI, 0.0)),
        (
            "phases filling [0, π/2]",
            vec![c(1.0, 0.0), c(0.3, 0.3), c(0.0, 4.0)],
            arc(-FRAC_PI_2, 0.0),
        ),
    ];
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for (label, values, expected) in cases {
        let f = scalar_field(&values, 3);
        let closed = certify(&f, &opts()).unwrap().theta_set;
        let numeric = theta_set_numeric(&f, N).unwrap();
        let d = dev(&closed, &expected).max(dev(&numeric, &expected));
        worst = worst.max(d);
        if d > 1e-8 {
            bad.push(label);
        }
    }
    outcome(
        bad.is_empty(),
        format!("4 sets, max endpoint error {worst:.2e}, failing {bad:?}"),
    )
}

fn c3_normal_and_hermitian() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for case in 0..100 {
        let lo = rng.random_range(-PI..PI);
        let width = rng.random_range(0.0..PI - 0.02);
        let phases = [lo, lo + width, lo + width * rng.random::<f64>()];
        let d = M3::from_diagonal(&nalgebra::Vector3::from_fn(|i, _| {
            Complex::from_polar(rng.random_range(0.2..5.0), phases[i])
        }));
        let q = random_unitary(&mut rng);
        let f = field("normal", vec![from_na(&(q * d * q.adjoint()))]);
        let cert = certify(&f, &opts()).unwrap();
        let numeric = theta_set_numeric(&f, N).unwrap();
        let e = dev(&cert.theta_set, &numeric).max(dev(
            &cert.theta_set,
            &arc(-FRAC_PI_2 - lo, FRAC_PI_2 - lo - width),
        ));
        worst = worst.max(e);
        if cert.method != Method::ClosedFormNormal || e > scan_tol() {
            bad.push(case);
        }
    }

    let mut herm_bad = Vec::new();
    for case in 0..60 {
        let g = random_m3(&mut rng);
        let pd = g * g.adjoint() + M3::identity() * Complex::new(0.1, 0.0);
        let (t, expected) = match case % 3 {
            0 => (pd, arc(-FRAC_PI_2, FRAC_PI_2)),
            1 => (-pd, arc(FRAC_PI_2, 1.5 * PI)),
            _ => {
                let q = random_unitary(&mut rng);
                let d = M3::from_diagonal(&nalgebra::Vector3::new(
                    Complex::new(1.0 + rng.random::<f64>(), 0.0),
                    Complex::new(-1.0 - rng.random::<f64>(), 0.0),
                    Complex::new(0.5, 0.0),
                ));
                let m = q * d * q.adjoint();
                ((m + m.adjoint()) * Complex::new(0.5, 0.0), ArcSet::empty())
            }
        };
        let f = field("hermitian", vec![from_na(&t)]);
        let cert = certify(&f, &opts()).unwrap();
        if cert.method != Method::ClosedFormHermitian || cert.theta_set != expected {
            herm_bad.push(case);
        }
    }
    outcome(
        bad.is_empty() && herm_bad.is_empty(),
        format!(
            "100 normal, max deviation {worst:.2e}; 60 Hermitian sign cases; failing {bad:?} {herm_bad:?}"
        ),
    )
}

fn c4_inverse_and_scaling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let (mut inv_worst, mut scale_worst): (f64, f64) = (0.0, 0.0);
    let mut bracket_bad = 0;
    let mut bad = Vec::new();
    for case in 0..40 {
        let f = random_elliptic(&mut rng, "xi");
        let theta = theta_set_numeric(&f, N).unwrap();

        let inverted: Vec<ComplexTensor> = f
            .tensors()
            .map(|t| from_na(&to_na(t).try_inverse().unwrap()))
            .collect();
        let theta_inv = theta_set_numeric(&field("inv", inverted.clone()), N).unwrap();
        let di = dev(&theta_inv, &theta.negate());

        let alpha = Complex::from_polar(rng.random_range(0.1..5.0), rng.random_range(-PI..PI));
        let scaled: Vec<ComplexTensor> = f.tensors().map(|t| t.scale(alpha)).collect();
        let theta_s = theta_set_numeric(&field("scaled", scaled), N).unwrap();
        let ds = dev(&theta_s, &theta.shift(alpha.arg()));

        inv_worst = inv_worst.max(di);
        scale_worst = scale_worst.max(ds);
        if di > scan_tol() || ds > scan_tol() {
            bad.push(case);
        }

        // ζ₊⁻¹ ≤ ‖ζ⁻¹‖ ≤ ζ₋(θ)⁻¹ at interior directions
        let zeta_plus = f.tensors().map(na_norm).fold(0.0, f64::max);
        for theta in interior_directions(&theta, 7) {
            let zeta_minus = f
                .tensors()
                .map(|t| na_xi_minus(t, theta))
                .fold(f64::INFINITY, f64::min);
            if zeta_minus <= 0.0 {
                continue;
            }
            for inv in &inverted {
                let n = na_norm(inv);
                let ok = 1.0 / zeta_plus <= n * (1.0 + 1e-12) && n <= (1.0 + 1e-12) / zeta_minus;
                if !ok {
                    bracket_bad += 1;
                }
            }
        }
    }
    outcome(
        bad.is_empty() && bracket_bad == 0,
        format!(
            "40 fields: inverse {inv_worst:.2e}, scaling {scale_worst:.2e} (tol {:.2e}), bracket violations {bracket_bad}, failing {bad:?}",
            scan_tol()
        ),
    )
}

fn c5_eigenvalue_localization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut fields = Vec::new();
    for model in CatalogModel::ALL {
        for q in model.quantities() {
            fields.push(model.example_field(Some(q)).unwrap().materialize().unwrap());
        }
    }
    let catalog = fields.len();
    for k in 0..50 {
        fields.push(random_elliptic(&mut rng, &format!("random{k}")));
    }
    let (mut checks, mut violations, mut skipped) = (0usize, Vec::new(), 0);
    for f in &fields {
        let cert = certify(f, &opts()).unwrap();
        if !cert.is_elliptic() {
            skipped += 1;
            continue;
        }
        let zeta_plus = f.tensors().map(na_norm).fold(0.0, f64::max);
        let eigs: Vec<Vec<Complex>> = f.tensors().map(na_eigenvalues).collect();
        for theta in interior_directions(&cert.theta_set, 9) {
            let xm = f
                .tensors()
                .map(|t| na_xi_minus(t, theta))
                .fold(f64::INFINITY, f64::min);
            let rot = Complex::from_polar(1.0, theta);
            for l in eigs.iter().flatten() {
                checks += 1;
                let tol = 1e-9 * zeta_plus.max(1.0);
                if (rot * l).re < xm - 1e-9 || l.norm() < xm - tol || l.norm() > zeta_plus + tol {
                    violations.push((f.name.clone(), theta, *l));
                }
            }
        }
    }
    outcome(
        violations.is_empty() && skipped < fields.len(),
        format!(
            "{catalog} catalog + 50 random fields, {checks} eigenvalue checks, {skipped} non-elliptic skipped, violations {:?}",
            violations.first()
        ),
    )
}

fn lossy_problem(eps: Complex, mu: f64, omega: f64, alpha: Option<SampledField>) -> Problem {
    let e = SampledField::constant("eps", ComplexTensor::scalar(3, eps).unwrap());
    let m = SampledField::constant(
        "mu",
        ComplexTensor::scalar(3, Complex::new(mu, 0.0)).unwrap(),
    );
    let mut spec = ProblemSpec::new(
        BoundaryCondition::Dirichlet,
        omega,
        e.to_definition(),
        m.to_definition(),
    );
    if let Some(a) = alpha {
        spec.bc = BoundaryCondition::Robin;
        spec = spec.with_alpha(a.to_definition());
    }
    Problem::from_spec(&spec, &opts()).unwrap()
}

fn c6_coercivity_constants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for case in 0..200 {
        let robin = case >= 100;
        let eps = Complex::from_polar(
            rng.random_range(0.3..4.0),
            rng.random_range(0.02..FRAC_PI_2 - 0.02),
        );
        let mu = rng.random_range(0.3..4.0);
        let omega = rng.random_range(0.3..3.0);
        let alpha = robin.then(|| {
            Complex::from_polar(
                rng.random_range(0.2..3.0),
                rng.random_range(0.02..PI + eps.arg() - 0.02),
            )
        });
        let alpha_field =
            alpha.map(|a| SampledField::constant("alpha", ComplexTensor::scalar(2, a).unwrap()));
        let p = lossy_problem(eps, mu, omega, alpha_field);
        let common = p.theta_common().unwrap();
        let dirs = interior_directions(&common, 6);
        if dirs.is_empty() {
            bad.push(case);
            continue;
        }
        for theta in dirs {
            let mut closed =
                (-theta.cos() / mu).min(omega * omega * eps.norm() * (theta + eps.arg()).cos());
            if let Some(a) = alpha {
                closed = closed.min(a.norm() * (theta + a.arg()).cos());
            }
            let got = p
                .coercivity_constant(theta)
                .map(|b| b.c)
                .unwrap_or(f64::NAN);
            let e = (got - closed).abs();
            worst = worst.max(if e.is_nan() { f64::INFINITY } else { e });
            if e.is_nan() || e > 1e-12 {
                bad.push(case);
            }
        }
    }
    let p = lossy_problem(Complex::new(1.0, 1.0), 1.0, 1.0, None);
    let o = p.maximize().unwrap();
    let (dt, dc) = (
        (o.theta_star - (-PI + 2f64.atan())).abs(),
        (o.c_star - 1.0 / 5f64.sqrt()).abs(),
    );
    outcome(
        bad.is_empty() && dt <= 1e-6 && dc <= 1e-6,
        format!(
            "100 Dirichlet + 100 Robin, max |pipeline − closed form| {worst:.1e}; worked optimum errors θ* {dt:.1e}, c* {dc:.1e}; failing {bad:?}"
        ),
    )
}

fn c7_theta_intersections() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for case in 0..200 {
        let robin = case >= 100;
        let n = rng.random_range(1..6);
        let eps_phases: Vec<f64> = (0..n)
            .map(|_| rng.random_range(0.02..FRAC_PI_2 - 0.02))
            .collect();
        let eps_min = eps_phases.iter().copied().fold(f64::INFINITY, f64::min);
        let eps_values: Vec<Complex> = eps_phases
            .iter()
            .map(|&p| Complex::from_polar(rng.random_range(0.3..4.0), p))
            .collect();
        let mu = SampledField::constant(
            "mu",
            ComplexTensor::scalar(3, Complex::new(rng.random_range(0.3..3.0), 0.0)).unwrap(),
        );
        let mut spec = ProblemSpec::new(
            BoundaryCondition::Dirichlet,
            rng.random_range(0.3..3.0),
            scalar_field(&eps_values, 3).to_definition(),
            mu.to_definition(),
        );
        let expected = if robin {
            let a_lo = rng.random_range(0.02..PI + eps_min - 0.05);
            let a_hi = rng.random_range(a_lo..(a_lo + PI - 0.02).min(PI + eps_min - 0.02));
            let mut a_phases = vec![a_lo, a_hi];
            a_phases.push(rng.random_range(a_lo..=a_hi));
            let values: Vec<Complex> = a_phases
                .iter()
                .map(|&p| Complex::from_polar(rng.random_range(0.2..3.0), p))
                .collect();
            spec.bc = BoundaryCondition::Robin;
            spec = spec.with_alpha(scalar_field(&values, 2).to_definition());
            arc(
                -FRAC_PI_2 - eps_min.min(a_lo),
                -FRAC_PI_2 - (a_hi - PI).max(0.0),
            )
        } else {
            arc(-FRAC_PI_2 - eps_min, -FRAC_PI_2)
        };
        let common = Problem::from_spec(&spec, &opts())
            .unwrap()
            .theta_common()
            .unwrap();
        let d = dev(&common, &expected);
        worst = worst.max(d);
        if d > scan_tol() {
            bad.push(case);
        }
    }
    outcome(
        bad.is_empty(),
        format!("100 Dirichlet/Neumann + 100 Robin instances, max endpoint error {worst:.2e}, failing {bad:?}"),
    )
}

fn c8_media_diagnostics() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut notes = Vec::new();
    let mut ok = true;

    let mut ferrite_worst: f64 = 0.0;
    let mut positivity_bad = 0;
    for _ in 0..200 {
        let omega0 = rng.random_range(0.3..3.0);
        let omega = loop {
            let w: f64 = rng.random_range(0.05..4.0);
            if (w - omega0).abs() > 0.05 {
                break w;
            }
        };
        let p = FerriteParams::new(omega0, rng.random_range(0.0..2.0), omega);
        let t = ferrite_mu(&p).unwrap();
        let mut oracle: Vec<f64> = SymmetricEigen::new(to_na(&t))
            .eigenvalues
            .iter()
            .copied()
            .collect();
        let mut formula = p.eigenvalues().to_vec();
        oracle.sort_by(f64::total_cmp);
        formula.sort_by(f64::total_cmp);
        let scale = oracle.iter().fold(1.0f64, |a, v| a.max(v.abs()));
        for (a, b) in oracle.iter().zip(&formula) {
            ferrite_worst = ferrite_worst.max((a - b).abs() / scale);
        }
        if p.positive_definite() != (oracle[0] > 0.0) {
            positivity_bad += 1;
        }
    }
    ok &= ferrite_worst <= 1e-12 && positivity_bad == 0;
    notes.push(format!(
        "ferrite rel. error {ferrite_worst:.1e}, positivity mismatches {positivity_bad}"
    ));

    // σ profiles with analytic primitives
    let mut pml_checked = 0;
    let mut pml_bad = 0;
    for (kind, power) in [
        (ProfileKind::Constant, 0),
        (ProfileKind::Linear, 1),
        (ProfileKind::Quadratic, 2),
    ] {
        for sigma0 in [0.1, 1.0, 10.0, 100.0] {
            for kappa in [0.25, 1.0, 4.0] {
                let (r1, r2) = (1.0, 1.0 + rng.random_range(0.2..2.0));
                let p = SphericalLayerParams::pml(r1, r2, SigmaProfile::new(kind, sigma0), kappa);
                for k in 0..=50 {
                    let r = r1 + (r2 - r1) * k as f64 / 50.0;
                    let l = r2 - r1;
                    let sigma = sigma0 * ((r - r1) / l).powi(power);
                    let integral =
                        sigma0 * (r - r1).powi(power + 1) / ((power + 1) as f64 * l.powi(power));
                    let phi1 = (sigma / kappa).atan();
                    let phi2 = (integral / (kappa * r)).atan();
                    let bound = 2.0 * (phi2 - phi1).abs() < PI;
                    let lib = pml_phases(r.min(r2), &p).unwrap();
                    pml_checked += 1;
                    if !bound || !lib.ok || (lib.phi1 - phi1).abs() > 1e-12 {
                        pml_bad += 1;
                    }
                }
            }
        }
    }
    ok &= pml_bad == 0;
    notes.push(format!("PML {pml_checked} radii, {pml_bad} bad"));

    let cloak = |clamp: serde_json::Value| {
        let f = MaterialField::parametric(
            "cloak",
            CatalogModel::SphericalCloak,
            None,
            json!({"R1": 1.0, "R2": 3.0, "clamp_eps": clamp}),
            None,
        )
        .unwrap()
        .materialize()
        .unwrap();
        certify(&f, &opts()).unwrap()
    };
    let unclamped = cloak(json!(null));
    let witness = unclamped.witnesses.first().map(|w| w.sample.clone());
    let rejected = !unclamped.is_elliptic() && witness.as_deref() == Some("r=1");
    let clamped = cloak(json!(1e-3));
    let accepted = clamped
        .theta_set
        .approx_eq(&arc(-FRAC_PI_2, FRAC_PI_2), 1e-12);
    ok &= rejected && accepted;
    notes.push(format!(
        "unclamped cloak witness {witness:?}, clamped Θ = {}",
        clamped.theta_set
    ));
    outcome(ok, notes.join("; "))
}

/// `lo ≤ θ ≤ hi` on the real line, wrapped; endpoint status within the
/// library's angle tolerance.
#[derive(Clone, Copy)]
struct Interval {
    lo: f64,
    hi: f64,
    lo_closed: bool,
    hi_closed: bool,
}

fn near(a: f64, b: f64) -> bool {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d) <= ANGLE_TOL
}

impl Interval {
    fn contains(&self, t: f64) -> bool {
        if near(t, self.lo) {
            return self.lo_closed;
        }
        if near(t, self.hi) {
            return self.hi_closed;
        }
        (t - self.lo).rem_euclid(TAU) < self.hi - self.lo
    }
}

fn random_intervals(rng: &mut ChaCha8Rng) -> Vec<Interval> {
    (0..rng.random_range(0..=4))
        .map(|_| {
            let lo = rng.random_range(-PI..PI);
            let width = match rng.random_range(0..4) {
                0 => 0.0,
                1 => rng.random_range(0.0..0.1),
                _ => rng.random_range(0.0..TAU - 0.01),
            };
            Interval {
                lo,
                hi: lo + width,
                lo_closed: width == 0.0 || rng.random_bool(0.5),
                hi_closed: width == 0.0 || rng.random_bool(0.5),
            }
        })
        .collect()
}

fn build(parts: &[Interval]) -> ArcSet {
    parts.iter().fold(ArcSet::empty(), |acc, p| {
        acc.union(&ArcSet::interval(p.lo, p.hi, p.lo_closed, p.hi_closed).unwrap())
    })
}

fn member(parts: &[Interval], t: f64) -> bool {
    parts.iter().any(|p| p.contains(t))
}

fn c9_arc_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let (mut probes, mut mismatches, mut identity_failures) = (0usize, 0usize, Vec::new());
    for pair in 0..500 {
        let (pa, pb) = (random_intervals(&mut rng), random_intervals(&mut rng));
        let (a, b) = (build(&pa), build(&pb));
        let beta = rng.random_range(-TAU..TAU);
        let (u, i, n, s) = (a.union(&b), a.intersect(&b), a.negate(), a.shift(beta));
        let ends: Vec<f64> = pa.iter().chain(&pb).flat_map(|p| [p.lo, p.hi]).collect();
        let clear = |t: f64, shift: f64, sign: f64| {
            ends.iter()
                .all(|&e| !near(sign * t + shift, e) || (e - (sign * t + shift)).abs() == 0.0)
        };
        let mut probe = |t: f64| {
            // a probe within tolerance of an endpoint is only meaningful at the endpoint itself
            if clear(t, 0.0, 1.0) {
                probes += 2;
                mismatches += (u.contains(t) != (member(&pa, t) || member(&pb, t))) as usize;
                mismatches += (i.contains(t) != (member(&pa, t) && member(&pb, t))) as usize;
            }
            if clear(t, 0.0, -1.0) {
                probes += 1;
                mismatches += (n.contains(t) != member(&pa, -t)) as usize;
            }
            if clear(t, beta, 1.0) {
                probes += 1;
                mismatches += (s.contains(t) != member(&pa, t + beta)) as usize;
            }
        };
        for _ in 0..100_000 {
            probe(rng.random_range(-PI..PI));
        }
        for &e in &ends {
            probe(e);
        }

        let beta2 = rng.random_range(-PI..PI);
        let identities = [
            ("negate∘negate", a.negate().negate(), a.clone()),
            (
                "complement∘complement",
                a.complement().complement(),
                a.clone(),
            ),
            ("shift(β)∘shift(−β)", a.shift(beta).shift(-beta), a.clone()),
            (
                "shift composition",
                a.shift(beta).shift(beta2),
                a.shift(beta + beta2),
            ),
            ("shift(0)", a.shift(0.0), a.clone()),
            (
                "negate∘shift",
                a.shift(beta).negate(),
                a.negate().shift(-beta),
            ),
            (
                "de Morgan",
                u.complement(),
                a.complement().intersect(&b.complement()),
            ),
        ];
        for (name, lhs, rhs) in identities {
            if lhs != rhs {
                identity_failures.push(format!("pair {pair}: {name}"));
            }
        }
    }
    outcome(
        mismatches == 0 && identity_failures.is_empty(),
        format!(
            "500 pairs, {probes} membership probes, {mismatches} mismatches, identity failures {:?}",
            identity_failures.first()
        ),
    )
}

fn c10_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_elliptic-media");
    let dir = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let mut reports = Vec::new();
    let mut codes = Vec::new();
    for k in 0..2 {
        let path = dir.path().join(format!("verify{k}.json"));
        let status = Command::new(bin)
            .args(["verify", "--seed", "42", "--output"])
            .arg(&path)
            .status()
            .unwrap();
        codes.push(status.code());
        reports.push(std::fs::read(&path).unwrap_or_default());
    }
    let per_run = start.elapsed() / 2;
    let identical = !reports[0].is_empty() && reports[0] == reports[1];
    outcome(
        identical && codes == [Some(0), Some(0)] && per_run <= Duration::from_secs(300),
        format!(
            "byte-identical: {identical}, exit codes {codes:?}, {:.1}s per run",
            per_run.as_secs_f64()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("scalar Θ-set closed forms", c1_scalar_closed_forms),
        ("canonical Θ-sets", c2_canonical_sets),
        ("normal and Hermitian criteria", c3_normal_and_hermitian),
        ("inverse and scaling", c4_inverse_and_scaling),
        ("eigenvalue localization", c5_eigenvalue_localization),
        ("coercivity constants", c6_coercivity_constants),
        ("Θ-intersection formulas", c7_theta_intersections),
        ("media diagnostics", c8_media_diagnostics),
        ("arc algebra", c9_arc_algebra),
        ("determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let tag = if result.ok { "PASS" } else { "FAIL" };
        if !result.ok {
            failed += 1;
        }
        println!("{tag} criterion {:>2} ({name}): {}", k + 1, result.detail);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
