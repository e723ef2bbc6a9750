//! Seeded oracle suite behind the `verify` command.
//!
//! Every check draws from its own ChaCha stream derived from the seed, so the
//! checks can run in parallel and the report (which carries no timings) is
//! byte-identical for a fixed seed.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::arcset::{circular_distance, ArcSet, ANGLE_TOL};
use crate::certify::{
    certify, eigenvalue_halfplane_check, interior_directions, theta_set_numeric, CertifyOptions,
    Method, DEFAULT_GRID,
};
use crate::coercivity::{BoundaryCondition, Problem, ProblemSpec};
use crate::field::{MaterialField, Sample, SampledField};
use crate::media::{
    ferrite_mu, lossy_fields, pml_phases, CatalogModel, FerriteParams, LossyIsotropicParams,
    ProfileKind, SigmaProfile, SphericalLayerParams,
};
use crate::tensor::{Complex, ComplexTensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Scan resolution for numeric Θ-sets; endpoint tolerances scale with `2π/grid`.
    pub grid: usize,
    /// Flip the sign of the phase in the closed-form oracles, so the suite
    /// must report failures.
    pub perturb: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 42,
            grid: DEFAULT_GRID,
            perturb: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub criterion: u8,
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "is_zero")]
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub grid: usize,
    pub perturbed: bool,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn criterion_passed(&self, criterion: u8) -> bool {
        let mut it = self.checks.iter().filter(|c| c.criterion == criterion);
        it.clone().next().is_some() && it.all(CheckResult::passed)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Accumulates the cases of one check.
struct Tally {
    out: CheckResult,
}

impl Tally {
    fn new(criterion: u8, name: &str, tolerance: Option<f64>) -> Self {
        Tally {
            out: CheckResult {
                criterion,
                name: name.to_string(),
                cases: 0,
                failures: 0,
                skipped: 0,
                max_error: tolerance.map(|_| 0.0),
                tolerance,
                first_failure: None,
            },
        }
    }

    fn fail(&mut self, what: impl FnOnce() -> String) {
        self.out.failures += 1;
        if self.out.first_failure.is_none() {
            self.out.first_failure = Some(what());
        }
    }

    /// One case passing iff `err <= tolerance`; NaN fails.
    fn error(&mut self, err: f64, what: impl FnOnce() -> String) {
        let tol = self.out.tolerance.expect("error check has a tolerance");
        let err = if err.is_nan() { f64::INFINITY } else { err };
        self.out.cases += 1;
        if let Some(m) = self.out.max_error.as_mut() {
            *m = m.max(err);
        }
        if err > tol {
            self.fail(|| format!("{} (error {err:e})", what()));
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.out.cases += 1;
        if !ok {
            self.fail(what);
        }
    }

    fn skip(&mut self) {
        self.out.skipped += 1;
    }

    fn finish(mut self) -> CheckResult {
        // infinite errors would serialize as null
        if let Some(m) = self.out.max_error {
            if !m.is_finite() {
                self.out.max_error = Some(f64::MAX);
            }
        }
        self.out
    }
}

type Check = fn(&mut ChaCha8Rng, &VerifyOptions) -> Vec<CheckResult>;

const CHECKS: [Check; 9] = [
    scalar_closed_forms,
    canonical_sets,
    normal_closed_forms,
    inverse_and_scaling,
    eigenvalue_localization,
    coercivity_constants,
    theta_intersections,
    media_diagnostics,
    arc_algebra,
];

pub fn run(opts: &VerifyOptions) -> VerifyReport {
    let checks: Vec<CheckResult> = CHECKS
        .par_iter()
        .enumerate()
        .map(|(i, check)| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(i as u64 + 1);
            check(&mut rng, opts)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let passed = checks.iter().filter(|c| c.passed()).count();
    VerifyReport {
        seed: opts.seed,
        grid: opts.grid,
        perturbed: opts.perturb,
        passed,
        failed: checks.len() - passed,
        checks,
    }
}

fn sign(opts: &VerifyOptions) -> f64 {
    if opts.perturb {
        -1.0
    } else {
        1.0
    }
}

/// Endpoint tolerance of a scan on `grid` directions.
pub fn scan_tolerance(grid: usize) -> f64 {
    2.0 * TAU / grid as f64 + 1e-8
}

fn deviation(a: &ArcSet, b: &ArcSet) -> f64 {
    a.max_endpoint_deviation(b).unwrap_or(f64::INFINITY)
}

/// `]lo, hi[`, or `None` when the bounds are reversed.
fn open_arc(lo: f64, hi: f64) -> Option<ArcSet> {
    (hi > lo).then(|| ArcSet::open(lo, hi).expect("finite ordered bounds"))
}

fn scalar_field(name: &str, values: &[Complex], dim: usize) -> SampledField {
    let samples = values
        .iter()
        .enumerate()
        .map(|(k, &v)| Sample::new(format!("s{k}"), ComplexTensor::scalar(dim, v).unwrap()))
        .collect();
    SampledField::new(name, samples).unwrap()
}

fn tensor_field(name: &str, tensors: Vec<ComplexTensor>) -> SampledField {
    let samples = tensors
        .into_iter()
        .enumerate()
        .map(|(k, t)| Sample::new(format!("s{k}"), t))
        .collect();
    SampledField::new(name, samples).unwrap()
}

/// Phases spanning exactly `[lo, lo + width]`: both ends plus `extra`
/// interior values.
fn phases_with_hull(rng: &mut ChaCha8Rng, lo: f64, width: f64, extra: usize) -> Vec<f64> {
    let mut p = vec![lo, lo + width];
    for _ in 0..extra {
        p.push(lo + width * rng.random::<f64>());
    }
    p
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex {
    Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> ComplexTensor {
    let m: Vec<Complex> = (0..9).map(|_| random_complex(rng)).collect();
    ComplexTensor::from_fn(3, |i, j| m[3 * i + j]).unwrap()
}

/// Columns from Gram–Schmidt on random vectors.
fn random_unitary(rng: &mut ChaCha8Rng) -> ComplexTensor {
    let mut cols: Vec<[Complex; 3]> = Vec::new();
    while cols.len() < 3 {
        let mut v = [
            random_complex(rng),
            random_complex(rng),
            random_complex(rng),
        ];
        for q in &cols {
            let dot: Complex = (0..3).map(|i| q[i].conj() * v[i]).sum();
            for i in 0..3 {
                v[i] -= dot * q[i];
            }
        }
        let n = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-3 {
            cols.push(v.map(|c| c / n));
        }
    }
    ComplexTensor::from_fn(3, |i, j| cols[j][i]).unwrap()
}

/// `Q diag(values) Qᴴ` for a random unitary `Q`.
fn random_normal(rng: &mut ChaCha8Rng, values: &[Complex; 3]) -> ComplexTensor {
    let q = random_unitary(rng);
    q.matmul(&ComplexTensor::diag(values).unwrap())
        .matmul(&q.adjoint())
}

/// `e^{iβ}(GGᴴ + δI + K)` with a random non-normal `K`; usually elliptic
/// around `−β`, callers certify to be sure.
fn random_general(rng: &mut ChaCha8Rng, beta: f64) -> ComplexTensor {
    let g = random_matrix(rng);
    let delta = rng.random_range(0.2..1.0);
    let p = g
        .matmul(&g.adjoint())
        .add(&ComplexTensor::scalar(3, Complex::new(delta, 0.0)).unwrap());
    let k = random_matrix(rng).scale(Complex::new(rng.random_range(0.0..0.5), 0.0));
    p.add(&k).scale(Complex::from_polar(1.0, beta))
}

/// A three-sample general field that certifies as elliptic.
fn random_elliptic_field(rng: &mut ChaCha8Rng, name: &str, opts: &CertifyOptions) -> SampledField {
    loop {
        let beta = rng.random_range(-PI..PI);
        let tensors = (0..3)
            .map(|_| {
                let b = beta + rng.random_range(-0.3..0.3);
                random_general(rng, b)
            })
            .collect();
        let f = tensor_field(name, tensors);
        if certify(&f, opts).is_ok_and(|c| c.is_elliptic()) {
            return f;
        }
    }
}

// ------------------------------------------------------------ criterion 1

fn scalar_closed_forms(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Vec<CheckResult> {
    let s = sign(opts);
    let copts = CertifyOptions {
        grid: opts.grid,
        force_numeric: false,
    };
    let mut exact = Tally::new(1, "scalar_closed_form", Some(1e-8));
    let mut scan = Tally::new(
        1,
        "scalar_closed_form_vs_scan",
        Some(scan_tolerance(opts.grid)),
    );
    for case in 0..200 {
        let lo = rng.random_range(-PI..PI);
        let width = if case % 20 == 0 {
            0.0
        } else {
            rng.random_range(0.0..PI - 0.05)
        };
        let extra = rng.random_range(0..4);
        let values: Vec<Complex> = phases_with_hull(rng, lo, width, extra)
            .into_iter()
            .map(|p| Complex::from_polar(rng.random_range(0.2..5.0), p))
            .collect();
        let f = scalar_field("scalar", &values, 1);
        let hi = lo + width;
        let what = || format!("phases [{lo}, {hi}]");
        let Some(expected) = open_arc(-FRAC_PI_2 - s * lo, FRAC_PI_2 - s * hi) else {
            exact.error(f64::INFINITY, what);
            scan.error(f64::INFINITY, what);
            continue;
        };
        match certify(&f, &copts) {
            Ok(c) if c.method == Method::ClosedFormScalar => {
                exact.error(deviation(&c.theta_set, &expected), what)
            }
            _ => exact.fail(what),
        }
        let numeric = theta_set_numeric(&f, opts.grid).unwrap();
        scan.error(deviation(&numeric, &expected), what);
    }
    vec![exact.finish(), scan.finish()]
}

// ------------------------------------------------------------ criterion 2

fn canonical_sets(_: &mut ChaCha8Rng, opts: &VerifyOptions) -> Vec<CheckResult> {
    let c = |re, im| Complex::new(re, im);
    let cases: [(&str, Vec<Complex>, ArcSet); 4] = [
        (
            "positive real",
            vec![c(2.5, 0.0)],
            ArcSet::open(-FRAC_PI_2, FRAC_PI_2).unwrap(),
        ),
        (
            "negative real",
            vec![c(-1.3, 0.0)],
            ArcSet::open(FRAC_PI_2, 1.5 * PI).unwrap(),
        ),
        (
            "positive imaginary",
            vec![c(0.0, 0.7)],
            ArcSet::open(-PI, 0.0).unwrap(),
        ),
        (
            "phases [0, π/2]",
            vec![c(1.0, 0.0), c(1.0, 1.0), c(0.0, 2.0)],
            ArcSet::open(-FRAC_PI_2, 0.0).unwrap(),
        ),
    ];
    let mut t = Tally::new(2, "canonical_theta_sets", Some(1e-8));
    for (label, values, expected) in cases {
        let f = scalar_field(label, &values, 3);
        let closed = certify(&f, &CertifyOptions::default()).unwrap().theta_set;
        t.error(deviation(&closed, &expected), || {
            format!("{label}: closed form {closed}")
        });
        let numeric = theta_set_numeric(&f, opts.grid).unwrap();
        t.error(deviation(&numeric, &expected), || {
            format!("{label}: scan {numeric}")
        });
    }
    vec![t.finish()]
}

// ------------------------------------------------------------ criterion 3

fn normal_closed_forms(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Vec<CheckResult> {
    let s = sign(opts);
    let copts = CertifyOptions {
        grid: opts.grid,
        force_numeric: false,
    };
    let mut exact = Tally::new(3, "normal_closed_form", Some(1e-8));
    let mut scan = Tally::new(
        3,
        "normal_closed_form_vs_scan",
        Some(scan_tolerance(opts.grid)),
    );
    for _ in 0..100 {
        let lo = rng.random_range(-PI..PI);
        let width = rng.random_range(0.05..PI - 0.05);
        let p = phases_with_hull(rng, lo, width, 1);
        let values = [0, 1, 2].map(|k| Complex::from_polar(rng.random_range(0.3..3.0), p[k]));
        let f = tensor_field("normal", vec![random_normal(rng, &values)]);
        let hi = lo + width;
        let what = || format!("eigenphases [{lo}, {hi}]");
        let Some(expected) = open_arc(-FRAC_PI_2 - s * lo, FRAC_PI_2 - s * hi) else {
            exact.error(f64::INFINITY, what);
            scan.error(f64::INFINITY, what);
            continue;
        };
        match certify(&f, &copts) {
            Ok(c) if c.method == Method::ClosedFormNormal => {
                exact.error(deviation(&c.theta_set, &expected), what)
            }
            Ok(c) => exact.fail(|| format!("{}: certified by {:?}", what(), c.method)),
            Err(e) => exact.fail(|| format!("{}: {e}", what())),
        }
        let numeric = theta_set_numeric(&f, opts.grid).unwrap();
        scan.error(deviation(&numeric, &expected), what);
    }

    let mut herm = Tally::new(3, "hermitian_sign_dichotomy", None);
    for case in 0..60 {
        let mut values: [f64; 3] = [0; 3].map(|_| rng.random_range(0.1..4.0));
        let expected = match case % 3 {
            0 => ArcSet::open(-FRAC_PI_2, FRAC_PI_2).unwrap(),
            1 => {
                values = values.map(|v| -v);
                ArcSet::open(FRAC_PI_2, 1.5 * PI).unwrap()
            }
            _ => {
                values[case % 2] *= -1.0;
                values[2] = values[2].abs();
                ArcSet::empty()
            }
        };
        let t = random_normal(rng, &values.map(|v| Complex::new(v, 0.0)));
        // Qdiag(λ)Qᴴ is Hermitian only to rounding; symmetrize
        let t = t.add(&t.adjoint()).scale(Complex::new(0.5, 0.0));
        let f = tensor_field("hermitian", vec![t]);
        let c = certify(&f, &copts).unwrap();
        herm.check(
            c.method == Method::ClosedFormHermitian && c.theta_set.approx_eq(&expected, 1e-12),
            || {
                format!(
                    "eigenvalues {values:?}: {:?} gave {}",
                    c.method, c.theta_set
                )
            },
        );
    }
    vec![exact.finish(), scan.finish(), herm.finish()]
}

// ------------------------------------------------------------ criterion 4

fn inverse_and_scaling(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Vec<CheckResult> {
    let tol = scan_tolerance(opts.grid);
    let copts = CertifyOptions {
        grid: opts.grid,
        force_numeric: false,
    };
    let mut inv = Tally::new(4, "inverse_negates_theta", Some(tol));
    let mut scl = Tally::new(4, "scaling_shifts_theta", Some(tol));
    let mut bracket = Tally::new(4, "inverse_norm_bracket", None);
    for case in 0..50 {
        let f = random_elliptic_field(rng, "xi", &copts);
        let theta = theta_set_numeric(&f, opts.grid).unwrap();
        let what = || format!("case {case}: Θ = {theta}");

        let finv = f.map_tensors("xi_inv", |t| t.inverse()).unwrap();
        let theta_inv = theta_set_numeric(&finv, opts.grid).unwrap();
        let expected = if opts.perturb {
            theta.clone()
        } else {
            theta.negate()
        };
        inv.error(deviation(&theta_inv, &expected), what);

        let alpha = Complex::from_polar(rng.random_range(0.2..3.0), rng.random_range(-PI..PI));
        let fs = f.map_tensors("alpha_xi", |t| Ok(t.scale(alpha))).unwrap();
        let theta_s = theta_set_numeric(&fs, opts.grid).unwrap();
        scl.error(deviation(&theta_s, &theta.shift(alpha.arg())), what);

        let c = certify(&f, &copts).unwrap();
        let best = c.xi_minus_max.unwrap();
        for t in f.tensors() {
            let n = t.inverse().unwrap().operator_norm();
            let (lo, hi) = (1.0 / c.xi_plus, 1.0 / best);
            bracket.check(lo <= n * (1.0 + 1e-12) && n <= hi * (1.0 + 1e-12), || {
                format!("case {case}: ‖ξ⁻¹‖ = {n} outside [{lo}, {hi}]")
            });
        }
    }
    vec![inv.finish(), scl.finish(), bracket.finish()]
}

// ------------------------------------------------------------ criterion 5

fn eigenvalue_localization(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Vec<CheckResult> {
    let copts = CertifyOptions {
        grid: opts.grid,
        force_numeric: false,
    };
    let mut t = Tally::new(5, "eigenvalue_halfplane", None);
    let mut fields = Vec::new();
    for model in CatalogModel::ALL {
        for q in model.quantities() {
            let f = model.example_field(Some(q)).unwrap().materialize().unwrap();
            fields.push(f);
        }
    }
    for k in 0..50 {
        fields.push(random_elliptic_field(rng, &format!("random_{k}"), &copts));
    }
    for f in &fields {
        let c = certify(f, &copts).unwrap();
        if !c.is_elliptic() {
            t.skip();
            continue;
        }
        let r = eigenvalue_halfplane_check(f, &c).unwrap();
        t.out.cases += r.checks;
        for v in &r.violations {
            t.fail(|| {
                format!(
                    "{}: sample {} λ = {}: {}",
                    f.name, v.sample, v.eigenvalue, v.reason
                )
            });
        }
    }
    vec![t.finish()]
}

// ------------------------------------------------------------ criterion 6

fn lossy_problem(p: &LossyIsotropicParams, alpha: Option<Complex>) -> Problem {
    let (eps, mu) = lossy_fields(p).unwrap();
    let mut spec = ProblemSpec::new(
        BoundaryCondition::Dirichlet,
        p.omega,
        eps.to_definition(),
        mu.to_definition(),
    );
    if let Some(a) = alpha {
        spec.bc = BoundaryCondition::Robin;
        spec = spec.with_alpha(MaterialField::constant(
            "alpha",
            ComplexTensor::scalar(2, a).unwrap(),
        ));
    }
    Problem::from_spec(&spec, &CertifyOptions::default()).unwrap()
}

fn random_lossy(rng: &mut ChaCha8Rng) -> LossyIsotropicParams {
    LossyIsotropicParams::constant(
        rng.random_range(0.5..3.0),
        rng.random_range(0.05..3.0),
        rng.random_range(0.5..3.0),
        rng.random_range(0.5..3.0),
    )
}

fn coercivity_constants(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Vec<CheckResult> {
    let s = sign(opts);
    let mut dir = Tally::new(6, "lossy_coercivity_closed_form", Some(1e-12));
    let mut rob = Tally::new(6, "robin_coercivity_closed_form", Some(1e-12));
    for (robin, tally) in [(false, &mut dir), (true, &mut rob)] {
        for case in 0..100 {
            let p = random_lossy(rng);
            let eps = p.eps_c(0);
            let (m_eps, phi_eps) = (eps.norm(), eps.arg());
            let alpha = robin.then(|| {
                Complex::from_polar(
                    rng.random_range(0.2..3.0),
                    rng.random_range(0.05..PI + phi_eps - 0.05),
                )
            });
            let problem = lossy_problem(&p, alpha);
            let common = problem.theta_common().unwrap();
            let dirs = interior_directions(&common, 5);
            if dirs.is_empty() {
                tally.fail(|| format!("case {case}: empty common set"));
                continue;
            }
            for theta in dirs {
                let mut closed = (-theta.cos() / p.mu())
                    .min(p.omega * p.omega * m_eps * (theta + s * phi_eps).cos());
                if let Some(a) = alpha {
                    closed = closed.min(a.norm() * (theta + s * a.arg()).cos());
                }
                let got = problem.breakdown_at(theta).c;
                tally.error((got - closed).abs() / closed.abs().max(1.0), || {
                    format!("case {case}, θ = {theta}: pipeline {got}, closed form {closed}")
                });
            }
        }
    }

    let mut opt = Tally::new(6, "worked_optimum", Some(1e-6));
    let problem = lossy_problem(&LossyIsotropicParams::constant(1.0, 1.0, 1.0, 1.0), None);
    let o = problem.maximize().unwrap();
    let theta_star = -PI + s * 2f64.atan();
    opt.error(circular_distance(o.theta_star, theta_star), || {
        format!("θ* = {}, expected {theta_star}", o.theta_star)
    });
    opt.error((o.c_star - 5f64.sqrt().recip()).abs(), || {
        format!("c* = {}", o.c_star)
    });
    vec![dir.finish(), rob.finish(), opt.finish()]
}

// ------------------------------------------------------------ criterion 7

fn theta_intersections(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Vec<CheckResult> {
    let s = sign(opts);
    let tol = scan_tolerance(opts.grid);
    let mut dir = Tally::new(7, "lossy_theta_intersection", Some(tol));
    let mut rob = Tally::new(7, "robin_theta_intersection", Some(tol));
    let copts = CertifyOptions {
        grid: opts.grid,
        force_numeric: false,
    };
    for robin in [false, true] {
        for case in 0..100 {
            let n = rng.random_range(2..7);
            let mut p = random_lossy(rng);
            p.sigma_profile = Some((0..n).map(|_| rng.random_range(0.0..4.0)).collect());
            p.eps_profile = Some((0..n).map(|_| rng.random_range(0.5..3.0)).collect());
            let (eps, mu) = lossy_fields(&p).unwrap();
            let phi_eps_min = (0..n)
                .map(|k| p.eps_c(k).arg())
                .fold(f64::INFINITY, f64::min);
            let mut spec = ProblemSpec::new(
                BoundaryCondition::Dirichlet,
                p.omega,
                eps.to_definition(),
                mu.to_definition(),
            );
            let (lo, hi) = if robin {
                let a_lo = rng.random_range(0.05..PI + phi_eps_min - 0.1);
                let a_hi = rng.random_range(a_lo..(a_lo + PI - 0.05).min(PI + phi_eps_min - 0.05));
                let values: Vec<Complex> = phases_with_hull(rng, a_lo, a_hi - a_lo, 2)
                    .into_iter()
                    .map(|ph| Complex::from_polar(rng.random_range(0.2..3.0), ph))
                    .collect();
                spec.bc = BoundaryCondition::Robin;
                spec = spec.with_alpha(scalar_field("alpha", &values, 2).to_definition());
                (
                    -FRAC_PI_2 - s * phi_eps_min.min(a_lo),
                    -FRAC_PI_2 - (a_hi - PI).max(0.0),
                )
            } else {
                (-FRAC_PI_2 - s * phi_eps_min, -FRAC_PI_2)
            };
            let tally = if robin { &mut rob } else { &mut dir };
            let what = || format!("case {case}: expected ]{lo}, {hi}[");
            let Some(expected) = open_arc(lo, hi) else {
                tally.error(f64::INFINITY, what);
                continue;
            };
            let problem = Problem::from_spec(&spec, &copts).unwrap();
            match problem.theta_common() {
                Ok(common) => tally.error(deviation(&common, &expected), what),
                Err(e) => tally.fail(|| format!("{}: {e}", what())),
            }
        }
    }
    vec![dir.finish(), rob.finish()]
}

// ------------------------------------------------------------ criterion 8

fn media_diagnostics(rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Vec<CheckResult> {
    let copts = CertifyOptions {
        grid: opts.grid,
        force_numeric: false,
    };
    let mut eig = Tally::new(8, "ferrite_eigenvalues", Some(1e-12));
    let mut pos = Tally::new(8, "ferrite_positivity", None);
    for case in 0..200 {
        let omega0 = rng.random_range(0.5..3.0);
        let omega = loop {
            let w: f64 = rng.random_range(0.1..4.0);
            if (w - omega0).abs() > 0.05 {
                break w;
            }
        };
        let p = FerriteParams::new(omega0, rng.random_range(0.0..2.0), omega);
        let t = ferrite_mu(&p).unwrap();
        let mut want = [
            1.0 + p.omega_m / (omega0 + omega),
            1.0 + p.omega_m / (omega0 - omega),
            1.0,
        ];
        let mut got = t.eig_hermitian().unwrap();
        let mut formula = p.eigenvalues();
        want.sort_by(f64::total_cmp);
        got.sort_by(f64::total_cmp);
        formula.sort_by(f64::total_cmp);
        let scale = t.operator_norm().max(1.0);
        let err = (0..3)
            .map(|k| (got[k] - want[k]).abs().max((formula[k] - want[k]).abs()))
            .fold(0.0, f64::max)
            / scale;
        eig.error(err, || format!("case {case}: {got:?} vs {want:?}"));
        pos.check(p.positive_definite() == (want[0] > 0.0), || {
            format!("case {case}: positivity criterion disagrees with {want:?}")
        });
    }

    let mut pml = Tally::new(8, "pml_phase_bound", None);
    for kind in [
        ProfileKind::Constant,
        ProfileKind::Linear,
        ProfileKind::Quadratic,
    ] {
        for sigma0 in [0.1, 1.0, 5.0, 20.0, 100.0] {
            for kappa in [0.5, 1.0, 2.0] {
                let r1 = rng.random_range(0.5..2.0);
                let r2 = r1 + rng.random_range(0.1..2.0);
                let p = SphericalLayerParams::pml(r1, r2, SigmaProfile::new(kind, sigma0), kappa);
                for k in 0..65 {
                    let r = r1 + (r2 - r1) * k as f64 / 64.0;
                    let ph = pml_phases(r.min(r2), &p).unwrap();
                    pml.check(ph.ok, || {
                        format!("{kind:?} σ0 = {sigma0}, κ = {kappa}, r = {r}: {ph:?}")
                    });
                }
            }
        }
    }

    let mut cloak = Tally::new(8, "cloak_verdicts", None);
    let half_plane = ArcSet::open(-FRAC_PI_2, FRAC_PI_2).unwrap();
    for _ in 0..10 {
        let r1 = rng.random_range(0.5..2.0);
        let r2 = r1 + rng.random_range(0.2..2.0);
        let unclamped = MaterialField::parametric(
            "cloak",
            CatalogModel::SphericalCloak,
            None,
            json!({"R1": r1, "R2": r2, "clamp_eps": null}),
            None,
        )
        .unwrap()
        .materialize()
        .unwrap();
        let c = certify(&unclamped, &copts).unwrap();
        let at_r1 = format!("r={r1}");
        cloak.check(
            !c.is_elliptic() && c.witnesses.first().is_some_and(|w| w.sample == at_r1),
            || {
                format!(
                    "unclamped R1 = {r1}: {} with {:?}",
                    c.theta_set, c.witnesses
                )
            },
        );
        let clamped = MaterialField::parametric(
            "cloak",
            CatalogModel::SphericalCloak,
            None,
            json!({"R1": r1, "R2": r2}),
            None,
        )
        .unwrap()
        .materialize()
        .unwrap();
        let c = certify(&clamped, &copts).unwrap();
        cloak.check(c.theta_set.approx_eq(&half_plane, 1e-8), || {
            format!("clamped R1 = {r1}: {}", c.theta_set)
        });
    }
    vec![eig.finish(), pos.finish(), pml.finish(), cloak.finish()]
}

// ------------------------------------------------------------ criterion 9

/// One interval `lo ≤ θ ≤ hi` on the real line, wrapped onto the circle.
#[derive(Debug, Clone, Copy)]
struct RawArc {
    lo: f64,
    hi: f64,
    lo_closed: bool,
    hi_closed: bool,
}

impl RawArc {
    /// Endpoint status within `ANGLE_TOL`, otherwise interior membership.
    fn contains(&self, theta: f64) -> bool {
        if circular_distance(theta, self.lo) <= ANGLE_TOL {
            return self.lo_closed;
        }
        if circular_distance(theta, self.hi) <= ANGLE_TOL {
            return self.hi_closed;
        }
        (theta - self.lo).rem_euclid(TAU) < self.hi - self.lo
    }
}

struct RandomSet {
    set: ArcSet,
    raw: Vec<RawArc>,
    full: bool,
}

impl RandomSet {
    fn contains(&self, theta: f64) -> bool {
        self.full || self.raw.iter().any(|a| a.contains(theta))
    }

    fn endpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.raw.iter().flat_map(|a| [a.lo, a.hi])
    }
}

fn random_set(rng: &mut ChaCha8Rng) -> RandomSet {
    let roll: f64 = rng.random();
    let mut raw = Vec::new();
    let mut full = false;
    if roll < 0.05 {
        // empty
    } else if roll < 0.1 {
        full = true;
    } else if roll < 0.15 {
        let at = rng.random_range(-PI..PI);
        raw.push(RawArc {
            lo: at,
            hi: at,
            lo_closed: true,
            hi_closed: true,
        });
    } else if roll < 0.2 {
        let at = rng.random_range(-PI..PI);
        raw.push(RawArc {
            lo: at,
            hi: at + TAU,
            lo_closed: false,
            hi_closed: false,
        });
    } else {
        for _ in 0..rng.random_range(1..=4) {
            let lo = rng.random_range(-PI..PI);
            let width = if rng.random_bool(0.3) {
                rng.random_range(0.0..0.3)
            } else {
                rng.random_range(0.0..TAU - 0.01)
            };
            raw.push(RawArc {
                lo,
                hi: lo + width,
                lo_closed: rng.random_bool(0.5),
                hi_closed: rng.random_bool(0.5),
            });
        }
    }
    let set = if full {
        ArcSet::full()
    } else {
        raw.iter().fold(ArcSet::empty(), |acc, a| {
            acc.union(&ArcSet::interval(a.lo, a.hi, a.lo_closed, a.hi_closed).unwrap())
        })
    };
    RandomSet { set, raw, full }
}

const ARC_PAIRS: usize = 500;
const ARC_SAMPLES: usize = 100_000;

struct PairOutcome {
    cases: usize,
    skipped: usize,
    failures: Vec<String>,
    identity_cases: usize,
    identity_failures: Vec<String>,
}

fn arc_pair(seed: u64, pair: usize) -> PairOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1000 + pair as u64);
    let a = random_set(&mut rng);
    let b = random_set(&mut rng);
    let beta = rng.random_range(-TAU..TAU);
    let union = a.set.union(&b.set);
    let inter = a.set.intersect(&b.set);
    let neg = a.set.negate();
    let shifted = a.set.shift(beta);
    let mut out = PairOutcome {
        cases: 0,
        skipped: 0,
        failures: Vec::new(),
        identity_cases: 0,
        identity_failures: Vec::new(),
    };
    let ends: Vec<f64> = a.endpoints().chain(b.endpoints()).collect();
    let near_end = |t: f64, ends: &[f64]| ends.iter().any(|&e| circular_distance(t, e) < 1e-8);
    let neg_ends: Vec<f64> = a.endpoints().map(|e| -e).collect();
    let shift_ends: Vec<f64> = a.endpoints().map(|e| e - beta).collect();
    let mut compare = |t: f64, op: &str, got: bool, want: bool| {
        out.cases += 1;
        if got != want {
            out.failures.push(format!(
                "pair {pair}, {op} at θ = {t}: got {got}, oracle {want}"
            ));
        }
    };
    let mut probe = |t: f64, random: bool| -> usize {
        let mut skipped = 0;
        if !(random && near_end(t, &ends)) {
            compare(
                t,
                "union",
                union.contains(t),
                a.contains(t) || b.contains(t),
            );
            compare(
                t,
                "intersect",
                inter.contains(t),
                a.contains(t) && b.contains(t),
            );
        } else {
            skipped += 1;
        }
        if !(random && near_end(t, &neg_ends)) {
            compare(t, "negate", neg.contains(t), a.contains(-t));
        }
        if !(random && near_end(t, &shift_ends)) {
            compare(t, "shift", shifted.contains(t), a.contains(t + beta));
        }
        skipped
    };
    let mut skipped = 0;
    for _ in 0..ARC_SAMPLES {
        let t = rng.random_range(-PI..PI);
        skipped += probe(t, true);
    }
    for &e in &ends {
        probe(e, false);
    }
    out.skipped = skipped;

    let mut identity = |name: &str, lhs: ArcSet, rhs: &ArcSet| {
        out.identity_cases += 1;
        if !lhs.approx_eq(rhs, ANGLE_TOL) {
            out.identity_failures
                .push(format!("pair {pair}, {name}: {lhs} vs {rhs}"));
        }
    };
    let beta2 = rng.random_range(-PI..PI);
    identity("negate twice", a.set.negate().negate(), &a.set);
    identity("complement twice", a.set.complement().complement(), &a.set);
    identity("shift and back", a.set.shift(beta).shift(-beta), &a.set);
    identity(
        "shift composition",
        a.set.shift(beta).shift(beta2),
        &a.set.shift(beta + beta2),
    );
    identity(
        "negate conjugates shift",
        a.set.shift(beta).negate(),
        &a.set.negate().shift(-beta),
    );
    identity(
        "de Morgan",
        union.complement(),
        &a.set.complement().intersect(&b.set.complement()),
    );
    identity("union commutes", b.set.union(&a.set), &union);
    identity(
        "a ∩ aᶜ",
        a.set.intersect(&a.set.complement()),
        &ArcSet::empty(),
    );
    identity("a ∪ aᶜ", a.set.union(&a.set.complement()), &ArcSet::full());
    out
}

fn arc_algebra(_: &mut ChaCha8Rng, opts: &VerifyOptions) -> Vec<CheckResult> {
    let outcomes: Vec<PairOutcome> = (0..ARC_PAIRS)
        .into_par_iter()
        .map(|pair| arc_pair(opts.seed, pair))
        .collect();
    let mut member = Tally::new(9, "arc_algebra_membership", None);
    let mut ident = Tally::new(9, "arc_algebra_identities", None);
    for o in outcomes {
        member.out.cases += o.cases;
        member.out.skipped += o.skipped;
        for f in o.failures {
            member.fail(|| f);
        }
        ident.out.cases += o.identity_cases;
        for f in o.identity_failures {
            ident.fail(|| f);
        }
    }
    vec![member.finish(), ident.finish()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let q = random_unitary(&mut rng);
        let e = q
            .matmul(&q.adjoint())
            .sub(&ComplexTensor::identity(3).unwrap());
        assert!(e.frobenius_norm() < 1e-14);
    }

    #[test]
    fn raw_arc_wraps() {
        let a = RawArc {
            lo: 3.0,
            hi: 4.0,
            lo_closed: false,
            hi_closed: true,
        };
        assert!(a.contains(-3.0));
        assert!(a.contains(4.0 - TAU));
        assert!(!a.contains(3.0));
        assert!(!a.contains(0.0));
    }

    #[test]
    fn tally_counts_nan_as_failure() {
        let mut t = Tally::new(1, "x", Some(1.0));
        t.error(f64::NAN, || "nan".into());
        t.error(0.5, || "ok".into());
        let r = t.finish();
        assert_eq!((r.cases, r.failures), (2, 1));
        assert!(!r.passed());
    }
}
