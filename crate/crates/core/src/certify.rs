//! Ellipticity certificates and Θ-sets of sampled fields.
//!
//! At a direction `θ` the sharp ellipticity constant of one tensor is the
//! smallest eigenvalue of its Hermitian part `H(θ)`; over a field it is the
//! minimum over samples. Scalar, Hermitian and normal fields get closed-form
//! Θ-sets from their (eigen)phase hulls, everything else is scanned.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arcset::{canonicalize, ArcSet};
use crate::error::{domain, Error, Result};
use crate::field::SampledField;
use crate::optimize::{scan_then_refine, Maximum};
use crate::tensor::{Complex, ComplexTensor, StructuralClass, Structure};

pub const DEFAULT_GRID: usize = 4096;
pub const BISECTION_TOL: f64 = 1e-9;
/// Coarse points per arc before golden-section refinement.
pub const COARSE_POINTS: usize = 33;
pub const REFINE_TOL: f64 = 1e-10;

/// `ε_ell = 1e-12·max(1, ξ₊)`: margins at or below this are not elliptic.
pub fn ellipticity_threshold(xi_plus: f64) -> f64 {
    1e-12 * xi_plus.max(1.0)
}

/// Hermitian pencil `H(θ) = cos θ·A + sin θ·C` of one tensor.
#[derive(Debug, Clone, Copy)]
struct Pencil {
    a: ComplexTensor,
    c: ComplexTensor,
}

impl Pencil {
    fn new(t: &ComplexTensor) -> Self {
        Pencil {
            a: t.hermitian_part(0.0),
            c: t.hermitian_part(FRAC_PI_2),
        }
    }

    fn lambda_min(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        self.a
            .scale(Complex::new(c, 0.0))
            .add(&self.c.scale(Complex::new(s, 0.0)))
            .min_hermitian_eig()
    }
}

/// Precomputed pencils of a sampled field; evaluates `ξ₋(θ)` quickly.
#[derive(Debug, Clone)]
pub struct XiMinus {
    pencils: Vec<Pencil>,
}

impl XiMinus {
    pub fn new(f: &SampledField) -> Result<Self> {
        if f.samples.is_empty() {
            return Err(Error::EmptyField(f.name.clone()));
        }
        Ok(XiMinus {
            pencils: f.tensors().map(Pencil::new).collect(),
        })
    }

    /// Minimum over samples of `λ_min(H(θ))`.
    pub fn eval(&self, theta: f64) -> f64 {
        self.pencils
            .iter()
            .map(|p| p.lambda_min(theta))
            .fold(f64::INFINITY, f64::min)
    }

    /// `λ_min(H(θ))` of one sample.
    pub fn eval_sample(&self, k: usize, theta: f64) -> f64 {
        self.pencils[k].lambda_min(theta)
    }

    /// Index of the sample attaining the minimum at `θ`.
    pub fn argmin(&self, theta: f64) -> usize {
        let mut best = (0, f64::INFINITY);
        for (k, p) in self.pencils.iter().enumerate() {
            let v = p.lambda_min(theta);
            if v < best.1 {
                best = (k, v);
            }
        }
        best.0
    }
}

/// Largest `c` such that `Re{e^{iθ}(ξz)·z̄} ≥ c|z|²` on every sample.
pub fn xi_minus(f: &SampledField, theta: f64) -> Result<f64> {
    Ok(XiMinus::new(f)?.eval(theta))
}

/// Uniform scan angles `−π + 2πk/N`.
pub fn scan_angles(n: usize) -> Vec<f64> {
    (0..n).map(|k| -PI + TAU * k as f64 / n as f64).collect()
}

/// Θ-set by scanning `n` uniform directions and bisecting every sign change
/// of `ξ₋(θ) − ε_ell` to [`BISECTION_TOL`]. Arcs are open.
pub fn theta_set_numeric(f: &SampledField, n: usize) -> Result<ArcSet> {
    let eval = XiMinus::new(f)?;
    theta_set_scan(&|t| eval.eval(t), ellipticity_threshold(f.sup_norm()), n)
}

pub(crate) fn theta_set_scan(
    g: &(dyn Fn(f64) -> f64 + Sync),
    threshold: f64,
    n: usize,
) -> Result<ArcSet> {
    if n < 16 {
        return Err(domain(format!("scan resolution {n} below 16")));
    }
    let angles = scan_angles(n);
    let good: Vec<bool> = angles.par_iter().map(|&t| g(t) > threshold).collect();
    if good.iter().all(|&b| b) {
        return Ok(ArcSet::full());
    }
    if !good.iter().any(|&b| b) {
        return Ok(ArcSet::empty());
    }
    let h = TAU / n as f64;
    let boundary = |k: usize| {
        // good[k] != good[k+1]; bisect on [θ_k, θ_k + h]
        let rising = !good[k];
        let (mut lo, mut hi) = (angles[k], angles[k] + h);
        while hi - lo > BISECTION_TOL {
            let mid = 0.5 * (lo + hi);
            if (g(mid) > threshold) == rising {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (0.5 * (lo + hi), rising)
    };
    let changes: Vec<usize> = (0..n).filter(|&k| good[k] != good[(k + 1) % n]).collect();
    let bounds: Vec<(f64, bool)> = changes.par_iter().map(|&k| boundary(k)).collect();
    // rotate so the list starts with a rising edge
    let first = bounds
        .iter()
        .position(|b| b.1)
        .expect("sign changes come in pairs");
    let mut set = ArcSet::empty();
    let m = bounds.len();
    for i in (0..m).step_by(2) {
        let (lo, _) = bounds[(first + i) % m];
        let (mut hi, _) = bounds[(first + i + 1) % m];
        while hi <= lo {
            hi += TAU;
        }
        set = set.union(&ArcSet::open(lo, hi)?);
    }
    Ok(set)
}

/// Θ-set of a scalar field with phases in `[φ₋, φ₊]`: the circle arc
/// `]−π/2−φ₋, π/2−φ₊[`. Returns the set and its sharpness.
pub fn theta_set_scalar(phi_minus: f64, phi_plus: f64, attained: bool) -> Result<(ArcSet, bool)> {
    phase_arc(phi_minus, phi_plus, attained)
}

/// Θ-set of a normal field with eigenphases in `[β₋, β₊]`.
pub fn theta_set_normal(beta_minus: f64, beta_plus: f64, attained: bool) -> Result<(ArcSet, bool)> {
    phase_arc(beta_minus, beta_plus, attained)
}

fn phase_arc(lo: f64, hi: f64, attained: bool) -> Result<(ArcSet, bool)> {
    if !lo.is_finite() || !hi.is_finite() {
        return Err(domain("phase range not finite"));
    }
    if hi < lo {
        return Err(domain(format!("phase range reversed: {lo} > {hi}")));
    }
    if hi - lo >= PI {
        return Ok((ArcSet::empty(), false));
    }
    Ok((ArcSet::open(-FRAC_PI_2 - lo, FRAC_PI_2 - hi)?, attained))
}

/// Smallest arc `[lo, lo + w]` of the circle containing every phase, with
/// `lo ∈ [−π, π)`. Found as the complement of the largest gap.
pub fn phase_hull(phases: &[f64]) -> Option<(f64, f64)> {
    let mut p: Vec<f64> = phases
        .iter()
        .map(|&v| {
            if (-PI..PI).contains(&v) {
                v
            } else {
                (v + PI).rem_euclid(TAU) - PI
            }
        })
        .collect();
    if p.is_empty() {
        return None;
    }
    p.sort_by(f64::total_cmp);
    let k = p.len();
    let mut best_gap = p[0] + TAU - p[k - 1];
    let mut start = 0;
    for i in 1..k {
        let gap = p[i] - p[i - 1];
        if gap > best_gap {
            best_gap = gap;
            start = i;
        }
    }
    let hi = if start == 0 {
        p[k - 1]
    } else {
        p[start - 1] + TAU
    };
    Some((p[start], hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedFormScalar,
    ClosedFormNormal,
    ClosedFormHermitian,
    NumericScan,
}

/// One transformation applied to a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Derivation {
    /// `ξ ↦ ξ⁻¹`; `xi_plus` is the norm bound before inversion.
    Inverse { xi_plus: f64 },
    /// `ξ ↦ αξ`.
    Scale { alpha: Complex },
}

/// A sample that limits ellipticity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub sample: String,
    /// Direction maximizing this sample's constant (or the field's).
    pub theta: f64,
    pub xi_minus: f64,
    pub grid: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipticityCertificate {
    #[serde(rename = "field")]
    pub field_name: String,
    pub class: StructuralClass,
    pub xi_plus: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_plus_bracket: Option<[f64; 2]>,
    pub sharp: bool,
    pub method: Method,
    pub theta_set: ArcSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_resolution: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase_range: Option<[f64; 2]>,
    /// Best ellipticity constant over all directions, and where it occurs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_minus_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_direction: Option<f64>,
    pub sample_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_resolution: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub derivation: Vec<Derivation>,
    pub note: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    pub grid: usize,
    /// Skip the closed forms and always scan.
    pub force_numeric: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            grid: DEFAULT_GRID,
            force_numeric: false,
        }
    }
}

/// Field class: the predicates holding on every sample.
pub fn field_structure(f: &SampledField) -> Structure {
    f.tensors().map(ComplexTensor::structure).fold(
        Structure {
            scalar: true,
            hermitian: true,
            normal: true,
        },
        Structure::meet,
    )
}

struct ClosedForm {
    method: Method,
    theta_set: ArcSet,
    sharp: bool,
    phase_range: Option<[f64; 2]>,
}

/// Phases of the relevant spectral values, or `None` when one of them
/// vanishes (the field is then not elliptic).
fn spectral_phases(f: &SampledField, class: StructuralClass, threshold: f64) -> Option<Vec<f64>> {
    let mut phases = Vec::new();
    for t in f.tensors() {
        let values: Vec<Complex> = match class {
            StructuralClass::Scalar => vec![t.trace() / t.dim() as f64],
            StructuralClass::HermitianT => t
                .eig_hermitian()
                .expect("sample classified Hermitian")
                .into_iter()
                .map(|v| Complex::new(v, 0.0))
                .collect(),
            _ => t.eig_general(),
        };
        for v in values {
            if v.norm() <= threshold {
                return None;
            }
            phases.push(v.arg());
        }
    }
    Some(phases)
}

fn closed_form(
    f: &SampledField,
    class: StructuralClass,
    threshold: f64,
) -> Result<Option<ClosedForm>> {
    let method = match class {
        StructuralClass::Scalar => Method::ClosedFormScalar,
        StructuralClass::HermitianT => Method::ClosedFormHermitian,
        StructuralClass::NormalT => Method::ClosedFormNormal,
        StructuralClass::General => return Ok(None),
    };
    let Some(phases) = spectral_phases(f, class, threshold) else {
        return Ok(Some(ClosedForm {
            method,
            theta_set: ArcSet::empty(),
            sharp: true,
            phase_range: None,
        }));
    };
    let (lo, hi) = phase_hull(&phases).expect("nonempty field");
    if class == StructuralClass::HermitianT && hi - lo >= PI {
        // eigenvalues of both signs
        return Ok(Some(ClosedForm {
            method,
            theta_set: ArcSet::empty(),
            sharp: true,
            phase_range: Some([lo, hi]),
        }));
    }
    if hi - lo >= PI {
        // the closed form abstains
        return Ok(None);
    }
    // extremal phases are realized by samples, so the set is exact
    let (theta_set, sharp) = match class {
        StructuralClass::Scalar => theta_set_scalar(lo, hi, true)?,
        _ => theta_set_normal(lo, hi, true)?,
    };
    Ok(Some(ClosedForm {
        method,
        theta_set,
        sharp,
        phase_range: Some([lo, hi]),
    }))
}

/// Best constant over the arcs of `set`. `ξ₋` is concave where positive, so
/// a coarse scan plus golden section per arc suffices.
pub(crate) fn maximize_on_set(g: &(dyn Fn(f64) -> f64 + Sync), set: &ArcSet) -> Option<Maximum> {
    set.arcs()
        .iter()
        .map(|a| scan_then_refine(g, a.start, a.start + a.width, COARSE_POINTS, REFINE_TOL))
        .fold(None, |best: Option<Maximum>, m| match best {
            Some(b) if b.value >= m.value => Some(b),
            _ => Some(m),
        })
        .map(|m| Maximum {
            x: canonical(m.x),
            value: m.value,
        })
}

fn canonical(theta: f64) -> f64 {
    canonicalize(theta).map(|a| a.radians()).unwrap_or(theta)
}

/// Per sample, the best constant over the scan grid; the sample with the
/// smallest one limits the field.
fn worst_sample(f: &SampledField, eval: &XiMinus, grid: usize) -> Witness {
    let angles = scan_angles(grid);
    let per_sample: Vec<(f64, f64)> = (0..f.samples.len())
        .into_par_iter()
        .map(|k| {
            angles.iter().map(|&t| (eval.eval_sample(k, t), t)).fold(
                (f64::NEG_INFINITY, 0.0),
                |a, b| if b.0 > a.0 { b } else { a },
            )
        })
        .collect();
    let (k, (v, t)) =
        per_sample
            .iter()
            .enumerate()
            .fold((0, (f64::INFINITY, 0.0)), |acc, (k, &vt)| {
                if vt.0 < acc.1 .0 {
                    (k, vt)
                } else {
                    acc
                }
            });
    Witness {
        sample: f.samples[k].id().to_string(),
        theta: t,
        xi_minus: v,
        grid,
    }
}

pub fn certify(f: &SampledField, opts: &CertifyOptions) -> Result<EllipticityCertificate> {
    let eval = XiMinus::new(f)?;
    let xi_plus = f.sup_norm();
    let threshold = ellipticity_threshold(xi_plus);
    let class = field_structure(f).class();
    let closed = if opts.force_numeric {
        None
    } else {
        closed_form(f, class, threshold)?
    };
    let g = |t: f64| eval.eval(t);
    let (method, theta_set, sharp, phase_range, grid_resolution) = match closed {
        Some(c) => (c.method, c.theta_set, c.sharp, c.phase_range, None),
        None => (
            Method::NumericScan,
            theta_set_scan(&g, threshold, opts.grid)?,
            false,
            None,
            Some(opts.grid),
        ),
    };
    let best = maximize_on_set(&g, &theta_set);
    let mut witnesses = Vec::new();
    if theta_set.is_empty() {
        witnesses.push(worst_sample(f, &eval, opts.grid));
    } else if f.samples.len() > 1 {
        if let Some(b) = best {
            let k = eval.argmin(b.x);
            witnesses.push(Witness {
                sample: f.samples[k].id().to_string(),
                theta: b.x,
                xi_minus: b.value,
                grid: opts.grid,
            });
        }
    }
    let verdict = if theta_set.is_empty() {
        "not elliptic"
    } else {
        "elliptic"
    };
    Ok(EllipticityCertificate {
        field_name: f.name.clone(),
        class,
        xi_plus,
        xi_plus_bracket: None,
        sharp,
        method,
        theta_set,
        grid_resolution,
        phase_range,
        xi_minus_max: best.map(|b| b.value),
        best_direction: best.map(|b| b.x),
        sample_count: f.samples.len(),
        sample_resolution: f.resolution,
        witnesses,
        derivation: Vec::new(),
        note: format!(
            "{verdict} on {} samples; essential bounds replaced by sample extrema",
            f.samples.len()
        ),
    })
}

impl EllipticityCertificate {
    pub fn is_elliptic(&self) -> bool {
        !self.theta_set.is_empty()
    }

    fn require_elliptic(&self) -> Result<()> {
        if self.is_elliptic() {
            Ok(())
        } else {
            Err(Error::NotElliptic(self.field_name.clone()))
        }
    }

    /// Lower bound on the ellipticity constant at `θ`, following the
    /// derivation chain back to the sampled base field.
    pub fn xi_minus_bound(&self, base: &SampledField, theta: f64) -> Result<f64> {
        let eval = XiMinus::new(base)?;
        Ok(bound_through(&self.derivation, &eval, theta))
    }
}

fn bound_through(steps: &[Derivation], eval: &XiMinus, theta: f64) -> f64 {
    match steps.split_last() {
        None => eval.eval(theta),
        Some((Derivation::Scale { alpha }, rest)) => {
            alpha.norm() * bound_through(rest, eval, theta + alpha.arg())
        }
        Some((Derivation::Inverse { xi_plus }, rest)) => {
            bound_through(rest, eval, -theta) / (xi_plus * xi_plus)
        }
    }
}

/// Certificate of `ξ⁻¹`: `Θ` negated, `ξ₋` bounded by `ξ₋(−θ)·ξ₊⁻²`, and
/// the norm bracketed by `[ξ₊⁻¹, (max ξ₋)⁻¹]`.
pub fn inverse_certificate(c: &EllipticityCertificate) -> Result<EllipticityCertificate> {
    c.require_elliptic()?;
    let best = c
        .xi_minus_max
        .ok_or_else(|| domain("certificate lacks its best ellipticity constant"))?;
    let upper = 1.0 / best;
    let mut derivation = c.derivation.clone();
    derivation.push(Derivation::Inverse { xi_plus: c.xi_plus });
    Ok(EllipticityCertificate {
        field_name: format!("inverse({})", c.field_name),
        class: c.class,
        xi_plus: upper,
        xi_plus_bracket: Some([1.0 / c.xi_plus, upper]),
        sharp: c.sharp,
        method: c.method,
        theta_set: c.theta_set.negate(),
        grid_resolution: c.grid_resolution,
        phase_range: c.phase_range.map(|[lo, hi]| [-hi, -lo]),
        xi_minus_max: Some(best / (c.xi_plus * c.xi_plus)),
        best_direction: c.best_direction.map(|t| canonical(-t)),
        sample_count: c.sample_count,
        sample_resolution: c.sample_resolution,
        witnesses: Vec::new(),
        derivation,
        note: c.note.clone(),
    })
}

/// Certificate of `αξ` for `α = |α|e^{iβ} ≠ 0`: `Θ` shifted by `β`
/// (`θ` belongs iff `θ + β` did) and both constants scaled by `|α|`.
pub fn scale_certificate(
    c: &EllipticityCertificate,
    alpha: Complex,
) -> Result<EllipticityCertificate> {
    if !alpha.is_finite() || alpha.norm() == 0.0 {
        return Err(domain(format!(
            "scaling factor {alpha} must be finite and nonzero"
        )));
    }
    c.require_elliptic()?;
    let (m, beta) = (alpha.norm(), alpha.arg());
    let class = match c.class {
        StructuralClass::HermitianT if alpha.im != 0.0 => StructuralClass::NormalT,
        other => other,
    };
    let mut derivation = c.derivation.clone();
    derivation.push(Derivation::Scale { alpha });
    Ok(EllipticityCertificate {
        field_name: format!("scale({})", c.field_name),
        class,
        xi_plus: m * c.xi_plus,
        xi_plus_bracket: c.xi_plus_bracket.map(|[a, b]| [m * a, m * b]),
        sharp: c.sharp,
        method: c.method,
        theta_set: c.theta_set.shift(beta),
        grid_resolution: c.grid_resolution,
        phase_range: c.phase_range.map(|[lo, hi]| [lo + beta, hi + beta]),
        xi_minus_max: c.xi_minus_max.map(|v| m * v),
        best_direction: c.best_direction.map(|t| canonical(t - beta)),
        sample_count: c.sample_count,
        sample_resolution: c.sample_resolution,
        witnesses: Vec::new(),
        derivation,
        note: c.note.clone(),
    })
}

/// One failed eigenvalue localization check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalfplaneViolation {
    pub sample: String,
    pub theta: f64,
    pub eigenvalue: Complex,
    pub xi_minus: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalfplaneReport {
    pub directions: usize,
    pub checks: usize,
    pub violations: Vec<HalfplaneViolation>,
}

impl HalfplaneReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Interior points of every arc: `per_arc` evenly spaced, endpoints excluded.
pub fn interior_directions(set: &ArcSet, per_arc: usize) -> Vec<f64> {
    set.arcs()
        .iter()
        .flat_map(|a| {
            (1..=per_arc)
                .map(move |i| canonical(a.start + a.width * i as f64 / (per_arc + 1) as f64))
        })
        .collect()
}

/// Checks that every eigenvalue `λ` satisfies `Re{e^{iθ}λ} ≥ ξ₋(θ)` and
/// `ξ₋(θ) ≤ |λ| ≤ ξ₊` at interior directions of the certificate.
pub fn eigenvalue_halfplane_check(
    f: &SampledField,
    c: &EllipticityCertificate,
) -> Result<HalfplaneReport> {
    c.require_elliptic()?;
    let eval = XiMinus::new(f)?;
    let tol = 1e-9 * c.xi_plus.max(1.0);
    let eigs: Vec<Vec<Complex>> = f.tensors().map(ComplexTensor::eig_general).collect();
    let dirs = interior_directions(&c.theta_set, 9);
    let mut report = HalfplaneReport {
        directions: dirs.len(),
        checks: 0,
        violations: Vec::new(),
    };
    for &theta in &dirs {
        let xm = eval.eval(theta);
        let rot = Complex::from_polar(1.0, theta);
        for (sample, values) in f.samples.iter().zip(&eigs) {
            for &l in values {
                report.checks += 1;
                let mut fail = |reason: &str| {
                    report.violations.push(HalfplaneViolation {
                        sample: sample.id().to_string(),
                        theta,
                        eigenvalue: l,
                        xi_minus: xm,
                        reason: reason.to_string(),
                    })
                };
                if (rot * l).re < xm - 1e-9 {
                    fail("Re{e^{iθ}λ} below ξ₋(θ)");
                }
                if l.norm() < xm - tol {
                    fail("|λ| below ξ₋(θ)");
                }
                if l.norm() > c.xi_plus + tol {
                    fail("|λ| above ξ₊");
                }
            }
        }
    }
    Ok(report)
}

/// Terms of `ζ₋‖v‖² ≤ Re{e^{iθ}(ζv, v)} ≤ |(ζv, v)| ≤ ζ₊‖v‖²` for a discrete
/// vector field `v` (one vector per sample, summed inner product).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FormChain {
    pub lower: f64,
    pub real_part: f64,
    pub modulus: f64,
    pub upper: f64,
}

impl FormChain {
    pub fn holds(&self, tol: f64) -> bool {
        self.lower <= self.real_part + tol
            && self.real_part <= self.modulus + tol
            && self.modulus <= self.upper + tol
    }
}

pub fn l2_form_chain(f: &SampledField, theta: f64, v: &[Vec<Complex>]) -> Result<FormChain> {
    if v.len() != f.samples.len() {
        return Err(domain(format!(
            "vector field has {} entries for {} samples",
            v.len(),
            f.samples.len()
        )));
    }
    let mut form = Complex::new(0.0, 0.0);
    let mut norm2 = 0.0;
    for (t, z) in f.tensors().zip(v) {
        if z.len() != f.dim {
            return Err(domain("vector dimension does not match the field"));
        }
        form += t.quadratic_form(z);
        norm2 += z.iter().map(|c| c.norm_sqr()).sum::<f64>();
    }
    Ok(FormChain {
        lower: xi_minus(f, theta)? * norm2,
        real_part: (Complex::from_polar(1.0, theta) * form).re,
        modulus: form.norm(),
        upper: f.sup_norm() * norm2,
    })
}
