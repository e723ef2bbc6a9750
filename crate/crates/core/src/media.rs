//! Catalog of concrete media: isotropic lossy media, spherical cloak and PML
//! layers, and gyrotropic media (generic, magnetized ferrite, cold plasma).
//!
//! Radial tensors are emitted diagonal in the radial frame
//! `(r̂, θ̂, φ̂)`; ellipticity is invariant under unitary changes of frame.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{domain, Error, Result};
use crate::field::{
    node_coords, node_id, MaterialField, Sample, SamplePoint, SampledField, SamplingSpec,
    DEFAULT_AXIS_COUNT,
};
use crate::tensor::{Complex, ComplexTensor};

pub const SI_EPS0: f64 = 8.8541878128e-12;
pub const SI_MU0: f64 = 1.25663706212e-6;
pub const DEFAULT_CLAMP_EPS: f64 = 1e-3;
pub const DEFAULT_QUAD_NODES: usize = 257;

const I: Complex = Complex::new(0.0, 1.0);

/// Unit system for the vacuum constants `ε₀`, `μ₀`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Units {
    #[default]
    Nondimensional,
    Si,
}

impl Units {
    pub fn eps0(self) -> f64 {
        match self {
            Units::Nondimensional => 1.0,
            Units::Si => SI_EPS0,
        }
    }

    pub fn mu0(self) -> f64 {
        match self {
            Units::Nondimensional => 1.0,
            Units::Si => SI_MU0,
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

fn nonnegative(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "{name} must be nonnegative and finite, got {v}"
        )))
    }
}

// ---------------------------------------------------------------- lossy

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LossyIsotropicParams {
    pub eps_r: f64,
    #[serde(default)]
    pub sigma: f64,
    #[serde(default = "one")]
    pub mu_r: f64,
    pub omega: f64,
    #[serde(default)]
    pub units: Units,
    /// Per-sample conductivity; overrides `sigma`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_profile: Option<Vec<f64>>,
    /// Per-sample relative permittivity; overrides `eps_r`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_profile: Option<Vec<f64>>,
}

fn one() -> f64 {
    1.0
}

impl LossyIsotropicParams {
    pub fn constant(eps_r: f64, sigma: f64, mu_r: f64, omega: f64) -> Self {
        LossyIsotropicParams {
            eps_r,
            sigma,
            mu_r,
            omega,
            units: Units::Nondimensional,
            sigma_profile: None,
            eps_profile: None,
        }
    }

    fn validate(&self) -> Result<()> {
        positive("omega", self.omega)?;
        positive("eps_r", self.eps_r)?;
        nonnegative("sigma", self.sigma)?;
        positive("mu_r", self.mu_r)?;
        for s in self.sigma_profile.iter().flatten() {
            nonnegative("sigma_profile entry", *s)?;
        }
        for e in self.eps_profile.iter().flatten() {
            positive("eps_profile entry", *e)?;
        }
        if let (Some(s), Some(e)) = (&self.sigma_profile, &self.eps_profile) {
            if s.len() != e.len() {
                return Err(domain(format!(
                    "sigma_profile has {} entries but eps_profile has {}",
                    s.len(),
                    e.len()
                )));
            }
        }
        if self.profile_len() == Some(0) {
            return Err(domain("lossy profiles are empty"));
        }
        Ok(())
    }

    fn profile_len(&self) -> Option<usize> {
        self.sigma_profile
            .as_ref()
            .or(self.eps_profile.as_ref())
            .map(Vec::len)
    }

    /// `ε_c = ε₀ε_r + iσ/ω` at profile index `k` (ignored without profiles).
    pub fn eps_c(&self, k: usize) -> Complex {
        let eps_r = self
            .eps_profile
            .as_ref()
            .map_or(self.eps_r, |p| p[k.min(p.len() - 1)]);
        let sigma = self
            .sigma_profile
            .as_ref()
            .map_or(self.sigma, |p| p[k.min(p.len() - 1)]);
        Complex::new(self.units.eps0() * eps_r, sigma / self.omega)
    }

    pub fn mu(&self) -> f64 {
        self.units.mu0() * self.mu_r
    }
}

/// Phase of `ε_c`, in `[0, π/2)`.
pub fn lossy_phase(eps_c: Complex) -> f64 {
    eps_c.im.atan2(eps_c.re)
}

/// `(ε, μ) = (ε_c I₃, μ I₃)` sampled per profile entry.
pub fn lossy_fields(p: &LossyIsotropicParams) -> Result<(SampledField, SampledField)> {
    p.validate()?;
    let n = p.profile_len().unwrap_or(1);
    let id = |k: usize| {
        if p.profile_len().is_some() {
            format!("k={k}")
        } else {
            "x0".to_string()
        }
    };
    let eps = (0..n)
        .map(|k| Ok(Sample::new(id(k), ComplexTensor::scalar(3, p.eps_c(k))?)))
        .collect::<Result<Vec<_>>>()?;
    let mu_t = ComplexTensor::scalar(3, Complex::new(p.mu(), 0.0))?;
    let mu = (0..n).map(|k| Sample::new(id(k), mu_t)).collect();
    Ok((SampledField::new("eps", eps)?, SampledField::new("mu", mu)?))
}

// ------------------------------------------------------- spherical layers

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    Constant,
    Linear,
    Quadratic,
    /// `σ₀/(R₂ − r)`: blows up at the outer radius and is rejected.
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaProfile {
    pub kind: ProfileKind,
    pub sigma0: f64,
}

impl SigmaProfile {
    pub fn new(kind: ProfileKind, sigma0: f64) -> Self {
        SigmaProfile { kind, sigma0 }
    }

    fn validate(&self) -> Result<()> {
        nonnegative("sigma0", self.sigma0)?;
        if self.kind == ProfileKind::Hyperbolic {
            return Err(domain(
                "unbounded absorbing profiles give unbounded PML coefficients, \
                 which lie outside the L∞ ellipticity setting; use a bounded profile",
            ));
        }
        Ok(())
    }

    pub fn eval(&self, r: f64, r1: f64, r2: f64) -> f64 {
        let t = (r - r1) / (r2 - r1);
        match self.kind {
            ProfileKind::Constant => self.sigma0,
            ProfileKind::Linear => self.sigma0 * t,
            ProfileKind::Quadratic => self.sigma0 * t * t,
            ProfileKind::Hyperbolic => self.sigma0 / (r2 - r),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphericalLayerParams {
    #[serde(rename = "R1")]
    pub r1: f64,
    #[serde(rename = "R2")]
    pub r2: f64,
    /// Cloak clamp `ε̂` in `s̃₂ = max(s₂, ε̂)`; `null` disables clamping.
    #[serde(default = "default_clamp")]
    pub clamp_eps: Option<f64>,
    #[serde(default = "default_profile")]
    pub sigma_profile: SigmaProfile,
    /// `κ = √(ε₀μ₀)·ω`.
    #[serde(default = "one")]
    pub kappa: f64,
    #[serde(default = "default_quad_nodes")]
    pub quad_nodes: usize,
    #[serde(default)]
    pub units: Units,
}

fn default_clamp() -> Option<f64> {
    Some(DEFAULT_CLAMP_EPS)
}

fn default_profile() -> SigmaProfile {
    SigmaProfile::new(ProfileKind::Constant, 0.0)
}

fn default_quad_nodes() -> usize {
    DEFAULT_QUAD_NODES
}

impl SphericalLayerParams {
    pub fn cloak(r1: f64, r2: f64, clamp_eps: Option<f64>) -> Self {
        SphericalLayerParams {
            r1,
            r2,
            clamp_eps,
            sigma_profile: default_profile(),
            kappa: 1.0,
            quad_nodes: DEFAULT_QUAD_NODES,
            units: Units::Nondimensional,
        }
    }

    pub fn pml(r1: f64, r2: f64, sigma_profile: SigmaProfile, kappa: f64) -> Self {
        SphericalLayerParams {
            sigma_profile,
            kappa,
            ..Self::cloak(r1, r2, None)
        }
    }

    fn validate(&self) -> Result<()> {
        positive("R1", self.r1)?;
        if !(self.r2.is_finite() && self.r2 > self.r1) {
            return Err(domain(format!(
                "need R1 < R2, got R1 = {}, R2 = {}",
                self.r1, self.r2
            )));
        }
        if let Some(e) = self.clamp_eps {
            positive("clamp_eps", e)?;
        }
        positive("kappa", self.kappa)?;
        if self.quad_nodes < 2 {
            return Err(domain("quad_nodes must be at least 2"));
        }
        self.sigma_profile.validate()
    }

    fn check_radius(&self, r: f64) -> Result<()> {
        let slack = 1e-12 * self.r2;
        if r.is_finite() && r >= self.r1 - slack && r <= self.r2 + slack {
            Ok(())
        } else {
            Err(domain(format!(
                "radius {r} outside the layer [{}, {}]",
                self.r1, self.r2
            )))
        }
    }
}

/// Cloak coefficients `(s₁, s₂)` before clamping.
pub fn cloak_coefficients(r: f64, p: &SphericalLayerParams) -> (f64, f64) {
    let denom = 1.0 - p.r1 / p.r2;
    (1.0 / denom, (1.0 - p.r1 / r) / denom)
}

/// `Λ = diag(s̃₂²/s₁, s₁, s₁)` in the radial frame.
pub fn cloak_tensor(r: f64, p: &SphericalLayerParams) -> Result<ComplexTensor> {
    p.validate()?;
    p.check_radius(r)?;
    let (s1, s2) = cloak_coefficients(r, p);
    let s2 = match p.clamp_eps {
        Some(e) => s2.max(e),
        None => s2.max(0.0),
    };
    let c = |v: f64| Complex::new(v, 0.0);
    ComplexTensor::diag(&[c(s2 * s2 / s1), c(s1), c(s1)])
}

/// `∫_{R₁}^r σ` by the composite trapezoid rule on `quad_nodes` uniform
/// nodes over the layer, with a partial last panel.
pub fn sigma_integral(r: f64, p: &SphericalLayerParams) -> f64 {
    let h = (p.r2 - p.r1) / (p.quad_nodes - 1) as f64;
    let sigma = |x: f64| p.sigma_profile.eval(x, p.r1, p.r2);
    let span = (r - p.r1).max(0.0);
    let full = ((span / h).floor() as usize).min(p.quad_nodes - 1);
    let mut acc = 0.0;
    for k in 0..full {
        let a = p.r1 + k as f64 * h;
        acc += 0.5 * h * (sigma(a) + sigma(a + h));
    }
    let a = p.r1 + full as f64 * h;
    if r > a {
        acc += 0.5 * (r - a) * (sigma(a) + sigma(r));
    }
    acc
}

/// PML coefficients `(s₁, s₂)`.
pub fn pml_coefficients(r: f64, p: &SphericalLayerParams) -> (Complex, Complex) {
    let s1 = Complex::new(1.0, p.sigma_profile.eval(r, p.r1, p.r2) / p.kappa);
    let s2 = Complex::new(1.0, sigma_integral(r, p) / (p.kappa * r));
    (s1, s2)
}

/// `Λ = diag(s₂²/s₁, s₁, s₁)` in the radial frame.
pub fn pml_tensor(r: f64, p: &SphericalLayerParams) -> Result<ComplexTensor> {
    p.validate()?;
    p.check_radius(r)?;
    let (s1, s2) = pml_coefficients(r, p);
    ComplexTensor::diag(&[s2 * s2 / s1, s1, s1])
}

/// Phases of the PML coefficients at one radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PmlPhases {
    pub r: f64,
    pub phi1: f64,
    pub phi2: f64,
    /// `φ₁, φ₂ ∈ [0, π/2)` and `2|φ₂ − φ₁| < π`.
    pub ok: bool,
}

pub fn pml_phases(r: f64, p: &SphericalLayerParams) -> Result<PmlPhases> {
    p.validate()?;
    p.check_radius(r)?;
    let (s1, s2) = pml_coefficients(r, p);
    let (phi1, phi2) = (s1.arg(), s2.arg());
    let in_range = |phi: f64| (0.0..FRAC_PI_2).contains(&phi);
    Ok(PmlPhases {
        r,
        phi1,
        phi2,
        ok: in_range(phi1) && in_range(phi2) && 2.0 * (phi2 - phi1).abs() < std::f64::consts::PI,
    })
}

// ------------------------------------------------------------ gyrotropic

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GyrotropicParams {
    #[serde(alias = "mu1")]
    pub eps1: Complex,
    #[serde(alias = "mu2")]
    pub eps2: Complex,
    #[serde(alias = "mu3")]
    pub eps3: Complex,
    /// `ε₀` or `μ₀`.
    #[serde(default = "one")]
    pub scale: f64,
}

/// `scale · [[ε₁, iε₂, 0], [−iε₂, ε₁, 0], [0, 0, ε₃]]`.
pub fn gyrotropic_tensor(p: &GyrotropicParams) -> Result<ComplexTensor> {
    let z = Complex::new(0.0, 0.0);
    let (a, b, c) = (p.eps1, I * p.eps2, p.eps3);
    ComplexTensor::from_rows(&[[a, b, z], [-b, a, z], [z, z, c]])
        .map(|t| t.scale(Complex::new(p.scale, 0.0)))
}

/// `scale · {ε₁ + ε₂, ε₁ − ε₂, ε₃}`.
pub fn gyrotropic_eigenvalues(p: &GyrotropicParams) -> [Complex; 3] {
    [p.eps1 + p.eps2, p.eps1 - p.eps2, p.eps3].map(|v| v * p.scale)
}

// --------------------------------------------------------------- ferrite

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FerriteParams {
    pub omega0: f64,
    pub omega_m: f64,
    pub omega: f64,
    #[serde(default = "one")]
    pub mu0_scale: f64,
    /// Relative permittivity for the `eps` quantity.
    #[serde(default = "one")]
    pub eps_r: f64,
}

impl FerriteParams {
    pub fn new(omega0: f64, omega_m: f64, omega: f64) -> Self {
        FerriteParams {
            omega0,
            omega_m,
            omega,
            mu0_scale: 1.0,
            eps_r: 1.0,
        }
    }

    fn validate(&self) -> Result<()> {
        positive("omega0", self.omega0)?;
        nonnegative("omega_m", self.omega_m)?;
        positive("omega", self.omega)?;
        positive("mu0_scale", self.mu0_scale)?;
        positive("eps_r", self.eps_r)?;
        let gap = (self.omega * self.omega - self.omega0 * self.omega0).abs();
        if gap <= 1e-12 * self.omega.powi(2).max(self.omega0.powi(2)) {
            return Err(domain(format!(
                "ferrite resonance: omega = {} coincides with omega0 = {}",
                self.omega, self.omega0
            )));
        }
        Ok(())
    }

    /// `(μ₁, μ₂, μ₃)`.
    pub fn coefficients(&self) -> (f64, f64, f64) {
        let d = self.omega * self.omega - self.omega0 * self.omega0;
        (
            1.0 - self.omega0 * self.omega_m / d,
            self.omega * self.omega_m / d,
            1.0,
        )
    }

    /// `μ₀{1 + ω_M/(ω₀ + ω), 1 + ω_M/(ω₀ − ω), 1}`.
    pub fn eigenvalues(&self) -> [f64; 3] {
        [
            1.0 + self.omega_m / (self.omega0 + self.omega),
            1.0 + self.omega_m / (self.omega0 - self.omega),
            1.0,
        ]
        .map(|v| v * self.mu0_scale)
    }

    /// Both `1 + ω_M/(ω₀ ± ω) > 0`.
    pub fn positive_definite(&self) -> bool {
        let [a, b, _] = self.eigenvalues();
        a > 0.0 && b > 0.0
    }
}

pub fn ferrite_mu(p: &FerriteParams) -> Result<ComplexTensor> {
    p.validate()?;
    let (m1, m2, m3) = p.coefficients();
    let c = |v: f64| Complex::new(v, 0.0);
    gyrotropic_tensor(&GyrotropicParams {
        eps1: c(m1),
        eps2: c(m2),
        eps3: c(m3),
        scale: p.mu0_scale,
    })
}

// ----------------------------------------------------------- cold plasma

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Species {
    pub omega_p: f64,
    /// Negative for electrons.
    pub omega_c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColdPlasmaParams {
    #[serde(default)]
    pub species: Vec<Species>,
    pub nu: f64,
    pub omega: f64,
    #[serde(default)]
    pub units: Units,
}

impl ColdPlasmaParams {
    fn validate(&self) -> Result<()> {
        positive("omega", self.omega)?;
        if !(self.nu.is_finite() && self.nu > 0.0) {
            return Err(domain(format!(
                "collision frequency nu must be positive, got {}",
                self.nu
            )));
        }
        for s in &self.species {
            positive("omega_p", s.omega_p)?;
            if !s.omega_c.is_finite() {
                return Err(domain("omega_c must be finite"));
            }
        }
        Ok(())
    }

    /// `(ε₁, ε₂, ε₃)` with `α = ω + iν`.
    pub fn coefficients(&self) -> (Complex, Complex, Complex) {
        let w = self.omega;
        let alpha = Complex::new(w, self.nu);
        let mut e1 = Complex::new(1.0, 0.0);
        let mut e2 = Complex::new(0.0, 0.0);
        let mut e3 = Complex::new(1.0, 0.0);
        for s in &self.species {
            let wp2 = s.omega_p * s.omega_p;
            let denom = s.omega_c * s.omega_c - alpha * alpha;
            e1 += alpha / w * wp2 / denom;
            e2 += s.omega_c / w * wp2 / denom;
            e3 -= wp2 / (w * alpha);
        }
        (e1, e2, e3)
    }

    pub fn gyrotropic(&self) -> GyrotropicParams {
        let (eps1, eps2, eps3) = self.coefficients();
        GyrotropicParams {
            eps1,
            eps2,
            eps3,
            scale: self.units.eps0(),
        }
    }
}

pub fn cold_plasma_eps(p: &ColdPlasmaParams) -> Result<ComplexTensor> {
    p.validate()?;
    gyrotropic_tensor(&p.gyrotropic())
}

// --------------------------------------------------------------- catalog

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogModel {
    LossyIsotropic,
    SphericalCloak,
    SphericalPml,
    Gyrotropic,
    Ferrite,
    ColdPlasma,
}

impl fmt::Display for CatalogModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A catalog model bound to its parameters and requested quantity.
#[derive(Debug, Clone)]
pub(crate) enum Evaluator {
    Constant(ComplexTensor),
    LossyProfile(Vec<ComplexTensor>),
    Cloak(SphericalLayerParams, f64),
    Pml(SphericalLayerParams, f64),
}

impl Evaluator {
    pub(crate) fn sample(&self, node: &[(String, f64)]) -> Result<Sample> {
        let radius = || {
            node.iter()
                .find(|(n, _)| n == "r")
                .map(|(_, v)| *v)
                .ok_or_else(|| domain("radial model needs a sampling axis named `r`"))
        };
        let tensor = match self {
            Evaluator::Constant(t) => *t,
            Evaluator::LossyProfile(ts) => {
                let k = node
                    .iter()
                    .find(|(n, _)| n == "k")
                    .map(|(_, v)| *v)
                    .ok_or_else(|| domain("lossy profiles need a sampling axis named `k`"))?;
                let idx = k.round();
                if idx < 0.0 || idx as usize >= ts.len() || (k - idx).abs() > 1e-9 {
                    return Err(domain(format!("profile index {k} out of range")));
                }
                ts[idx as usize]
            }
            Evaluator::Cloak(p, scale) => {
                cloak_tensor(radius()?, p)?.scale(Complex::new(*scale, 0.0))
            }
            Evaluator::Pml(p, scale) => pml_tensor(radius()?, p)?.scale(Complex::new(*scale, 0.0)),
        };
        let id = if node.is_empty() {
            "x0".to_string()
        } else {
            node_id(node)
        };
        Ok(Sample {
            point: SamplePoint {
                id,
                coords: node_coords(node),
                weight: None,
            },
            tensor,
        })
    }
}

fn parse<T: serde::de::DeserializeOwned>(model: CatalogModel, params: &Value) -> Result<T> {
    serde_json::from_value(params.clone())
        .map_err(|e| domain(format!("parameters for `{model}`: {e}")))
}

impl CatalogModel {
    pub const ALL: [CatalogModel; 6] = [
        CatalogModel::LossyIsotropic,
        CatalogModel::SphericalCloak,
        CatalogModel::SphericalPml,
        CatalogModel::Gyrotropic,
        CatalogModel::Ferrite,
        CatalogModel::ColdPlasma,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CatalogModel::LossyIsotropic => "lossy_isotropic",
            CatalogModel::SphericalCloak => "spherical_cloak",
            CatalogModel::SphericalPml => "spherical_pml",
            CatalogModel::Gyrotropic => "gyrotropic",
            CatalogModel::Ferrite => "ferrite",
            CatalogModel::ColdPlasma => "cold_plasma",
        }
    }

    pub fn from_id(id: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.id() == id)
            .ok_or_else(|| Error::UnknownModel(id.to_string()))
    }

    /// Quantities the model can emit; the first is the default.
    pub fn quantities(self) -> &'static [&'static str] {
        match self {
            CatalogModel::LossyIsotropic
            | CatalogModel::SphericalCloak
            | CatalogModel::SphericalPml => &["eps", "mu"],
            CatalogModel::Gyrotropic => &["tensor"],
            CatalogModel::Ferrite => &["mu", "eps"],
            CatalogModel::ColdPlasma => &["eps", "mu"],
        }
    }

    fn quantity(self, q: Option<&str>) -> Result<&'static str> {
        let qs = self.quantities();
        match q {
            None => Ok(qs[0]),
            Some(q) => qs.iter().copied().find(|x| *x == q).ok_or_else(|| {
                domain(format!(
                    "model `{self}` has no quantity `{q}` (expected one of {})",
                    qs.join(", ")
                ))
            }),
        }
    }

    pub fn dim(self, quantity: Option<&str>) -> Result<usize> {
        self.quantity(quantity).map(|_| 3)
    }

    /// Radial models sample `r` over the layer; profiles sample their index;
    /// everything else is a single point.
    pub fn default_sampling(self, params: &Value) -> Result<SamplingSpec> {
        match self {
            CatalogModel::SphericalCloak | CatalogModel::SphericalPml => {
                let p: SphericalLayerParams = parse(self, params)?;
                p.validate()?;
                Ok(SamplingSpec::radial(p.r1, p.r2, DEFAULT_AXIS_COUNT))
            }
            CatalogModel::LossyIsotropic => {
                let p: LossyIsotropicParams = parse(self, params)?;
                Ok(match p.profile_len() {
                    Some(n) if n > 0 => SamplingSpec {
                        axes: vec![crate::field::Axis::new("k", 0.0, (n - 1) as f64, n)],
                    },
                    _ => SamplingSpec::default(),
                })
            }
            _ => Ok(SamplingSpec::default()),
        }
    }

    pub(crate) fn evaluator(self, quantity: Option<&str>, params: &Value) -> Result<Evaluator> {
        let q = self.quantity(quantity)?;
        let real = |v: f64| Complex::new(v, 0.0);
        Ok(match self {
            CatalogModel::LossyIsotropic => {
                let p: LossyIsotropicParams = parse(self, params)?;
                p.validate()?;
                let n = p.profile_len();
                let value = |k| match q {
                    "eps" => ComplexTensor::scalar(3, p.eps_c(k)),
                    _ => ComplexTensor::scalar(3, real(p.mu())),
                };
                match n {
                    Some(n) => Evaluator::LossyProfile((0..n).map(value).collect::<Result<_>>()?),
                    None => Evaluator::Constant(value(0)?),
                }
            }
            CatalogModel::SphericalCloak | CatalogModel::SphericalPml => {
                let p: SphericalLayerParams = parse(self, params)?;
                p.validate()?;
                let scale = if q == "eps" {
                    p.units.eps0()
                } else {
                    p.units.mu0()
                };
                if self == CatalogModel::SphericalCloak {
                    Evaluator::Cloak(p, scale)
                } else {
                    Evaluator::Pml(p, scale)
                }
            }
            CatalogModel::Gyrotropic => {
                let p: GyrotropicParams = parse(self, params)?;
                Evaluator::Constant(gyrotropic_tensor(&p)?)
            }
            CatalogModel::Ferrite => {
                let p: FerriteParams = parse(self, params)?;
                p.validate()?;
                Evaluator::Constant(match q {
                    "mu" => ferrite_mu(&p)?,
                    _ => ComplexTensor::scalar(3, real(p.eps_r))?,
                })
            }
            CatalogModel::ColdPlasma => {
                let p: ColdPlasmaParams = parse(self, params)?;
                p.validate()?;
                Evaluator::Constant(match q {
                    "eps" => cold_plasma_eps(&p)?,
                    _ => ComplexTensor::scalar(3, real(p.units.mu0()))?,
                })
            }
        })
    }

    /// Ready-made parameters used by `media emit` when none are given.
    pub fn example_params(self) -> Value {
        match self {
            CatalogModel::LossyIsotropic => {
                json!({"eps_r": 1.0, "sigma": 1.0, "mu_r": 1.0, "omega": 1.0})
            }
            CatalogModel::SphericalCloak => {
                json!({"R1": 1.0, "R2": 2.0, "clamp_eps": DEFAULT_CLAMP_EPS})
            }
            CatalogModel::SphericalPml => json!({
                "R1": 1.0, "R2": 2.0, "kappa": 1.0,
                "sigma_profile": {"kind": "quadratic", "sigma0": 5.0}
            }),
            CatalogModel::Gyrotropic => {
                json!({"eps1": [1.0, 0.5], "eps2": [0.0, 0.2], "eps3": [2.0, 0.0]})
            }
            CatalogModel::Ferrite => json!({"omega0": 2.0, "omega_m": 1.0, "omega": 1.0}),
            CatalogModel::ColdPlasma => json!({
                "species": [{"omega_p": 1.0, "omega_c": -0.5}],
                "nu": 0.1, "omega": 1.0
            }),
        }
    }

    pub fn example_field(self, quantity: Option<&str>) -> Result<MaterialField> {
        MaterialField::parametric(
            format!("{}_{}", self.id(), self.quantity(quantity)?),
            self,
            quantity,
            self.example_params(),
            None,
        )
    }

    /// JSON-schema style description of the parameters.
    pub fn schema(self) -> Value {
        let num = |desc: &str| json!({"type": "number", "description": desc});
        let cplx = |desc: &str| json!({"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2, "description": desc});
        let units = json!({"enum": ["nondimensional", "si"], "default": "nondimensional"});
        let (props, required): (Value, Vec<&str>) = match self {
            CatalogModel::LossyIsotropic => (
                json!({
                    "eps_r": num("relative permittivity, > 0"),
                    "sigma": {"type": "number", "default": 0.0, "description": "conductivity in S/m, >= 0"},
                    "mu_r": {"type": "number", "default": 1.0, "description": "relative permeability, > 0"},
                    "omega": num("angular frequency in rad/s, > 0"),
                    "units": units,
                    "sigma_profile": {"type": "array", "items": {"type": "number"}, "description": "per-sample conductivity"},
                    "eps_profile": {"type": "array", "items": {"type": "number"}, "description": "per-sample relative permittivity"}
                }),
                vec!["eps_r", "omega"],
            ),
            CatalogModel::SphericalCloak | CatalogModel::SphericalPml => (
                json!({
                    "R1": num("inner radius, > 0"),
                    "R2": num("outer radius, > R1"),
                    "clamp_eps": {"type": ["number", "null"], "default": DEFAULT_CLAMP_EPS, "description": "cloak clamp for s2; null disables"},
                    "sigma_profile": {
                        "type": "object",
                        "properties": {
                            "kind": {"enum": ["constant", "linear", "quadratic", "hyperbolic"]},
                            "sigma0": num("profile amplitude, >= 0")
                        },
                        "default": {"kind": "constant", "sigma0": 0.0},
                        "description": "PML absorption; hyperbolic is unbounded and rejected"
                    },
                    "kappa": {"type": "number", "default": 1.0, "description": "sqrt(eps0 mu0) omega, > 0"},
                    "quad_nodes": {"type": "integer", "default": DEFAULT_QUAD_NODES, "description": "trapezoid nodes across the layer"},
                    "units": units
                }),
                vec!["R1", "R2"],
            ),
            CatalogModel::Gyrotropic => (
                json!({
                    "eps1": cplx("diagonal entry (alias mu1)"),
                    "eps2": cplx("gyration entry (alias mu2)"),
                    "eps3": cplx("axial entry (alias mu3)"),
                    "scale": {"type": "number", "default": 1.0, "description": "eps0 or mu0"}
                }),
                vec!["eps1", "eps2", "eps3"],
            ),
            CatalogModel::Ferrite => (
                json!({
                    "omega0": num("gyromagnetic response frequency, > 0"),
                    "omega_m": num("saturation magnetization frequency, >= 0"),
                    "omega": num("angular frequency, > 0, away from omega0"),
                    "mu0_scale": {"type": "number", "default": 1.0},
                    "eps_r": {"type": "number", "default": 1.0, "description": "isotropic permittivity for quantity eps"}
                }),
                vec!["omega0", "omega_m", "omega"],
            ),
            CatalogModel::ColdPlasma => (
                json!({
                    "species": {
                        "type": "array",
                        "items": {"type": "object", "properties": {
                            "omega_p": num("plasma frequency, > 0"),
                            "omega_c": num("cyclotron frequency, negative for electrons")
                        }, "required": ["omega_p", "omega_c"]},
                        "default": []
                    },
                    "nu": num("collision frequency, > 0"),
                    "omega": num("angular frequency, > 0"),
                    "units": units
                }),
                vec!["nu", "omega"],
            ),
        };
        json!({
            "id": self.id(),
            "quantities": self.quantities(),
            "params": {
                "type": "object",
                "properties": props,
                "required": required,
                "additionalProperties": false
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn lossy_phase_and_values() {
        let p = LossyIsotropicParams::constant(1.0, 2.0, 1.0, 2.0);
        assert_eq!(p.eps_c(0), c(1.0, 1.0));
        assert_abs_diff_eq!(
            lossy_phase(p.eps_c(0)),
            std::f64::consts::FRAC_PI_4,
            epsilon = 1e-15
        );
        let (eps, mu) = lossy_fields(&p).unwrap();
        assert_eq!(eps.samples.len(), 1);
        assert_eq!(mu.samples[0].tensor, ComplexTensor::identity(3).unwrap());
        assert!(lossy_fields(&LossyIsotropicParams::constant(1.0, 0.0, 1.0, 0.0)).is_err());
    }

    #[test]
    fn cloak_values() {
        let p = SphericalLayerParams::cloak(1.0, 2.0, None);
        let (s1, s2) = cloak_coefficients(2.0, &p);
        assert_abs_diff_eq!(s1, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s2, 1.0, epsilon = 1e-15);
        assert_eq!(cloak_tensor(1.0, &p).unwrap().get(0, 0), c(0.0, 0.0));
        let clamped = SphericalLayerParams::cloak(1.0, 2.0, Some(1e-3));
        assert_abs_diff_eq!(
            cloak_tensor(1.0, &clamped).unwrap().get(0, 0).re,
            1e-6 / 2.0,
            epsilon = 1e-18
        );
        assert!(cloak_tensor(0.5, &p).is_err());
    }

    #[test]
    fn pml_constant_profile_is_exact() {
        let p =
            SphericalLayerParams::pml(1.0, 2.0, SigmaProfile::new(ProfileKind::Constant, 3.0), 1.5);
        for r in [1.0, 1.3, 1.77, 2.0] {
            let (_, s2) = pml_coefficients(r, &p);
            let want = 3.0 * (r - 1.0) / (1.5 * r);
            assert_abs_diff_eq!(s2.im, want, epsilon = 1e-12);
        }
        let zero =
            SphericalLayerParams::pml(1.0, 2.0, SigmaProfile::new(ProfileKind::Linear, 0.0), 1.0);
        assert_eq!(
            pml_tensor(1.5, &zero).unwrap(),
            ComplexTensor::identity(3).unwrap()
        );
    }

    #[test]
    fn pml_rejects_unbounded_and_negative_profiles() {
        let p = SphericalLayerParams::pml(
            1.0,
            2.0,
            SigmaProfile::new(ProfileKind::Hyperbolic, 1.0),
            1.0,
        );
        assert!(pml_tensor(1.5, &p).is_err());
        let n = SphericalLayerParams::pml(
            1.0,
            2.0,
            SigmaProfile::new(ProfileKind::Constant, -1.0),
            1.0,
        );
        assert!(pml_tensor(1.5, &n).is_err());
    }

    #[test]
    fn ferrite_closed_form() {
        let p = FerriteParams::new(2.0, 1.0, 1.0);
        let (m1, m2, _) = p.coefficients();
        assert_abs_diff_eq!(m1, 5.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m2, -1.0 / 3.0, epsilon = 1e-15);
        let [a, b, c3] = p.eigenvalues();
        assert_abs_diff_eq!(a, 4.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(b, 2.0, epsilon = 1e-15);
        assert_eq!(c3, 1.0);
        assert!(p.positive_definite());
        assert!(!FerriteParams::new(1.0, 3.0, 2.0).positive_definite());
        assert!(ferrite_mu(&FerriteParams::new(1.0, 1.0, 1.0)).is_err());
        assert_eq!(
            ferrite_mu(&FerriteParams::new(2.0, 0.0, 1.0)).unwrap(),
            ComplexTensor::identity(3).unwrap()
        );
    }

    #[test]
    fn plasma_without_species_is_vacuum() {
        let p = ColdPlasmaParams {
            species: vec![],
            nu: 0.1,
            omega: 1.0,
            units: Units::Nondimensional,
        };
        assert_eq!(
            cold_plasma_eps(&p).unwrap(),
            ComplexTensor::identity(3).unwrap()
        );
        let bad = ColdPlasmaParams { nu: 0.0, ..p };
        assert!(cold_plasma_eps(&bad).is_err());
    }

    #[test]
    fn catalog_ids_roundtrip() {
        for m in CatalogModel::ALL {
            assert_eq!(CatalogModel::from_id(m.id()).unwrap(), m);
            let f = m.example_field(None).unwrap();
            let s = f.materialize().unwrap();
            assert!(!s.samples.is_empty());
        }
        assert!(matches!(
            CatalogModel::from_id("nope"),
            Err(Error::UnknownModel(_))
        ));
    }

    #[test]
    fn cloak_clamp_null_disables() {
        let p: SphericalLayerParams =
            serde_json::from_value(json!({"R1": 1.0, "R2": 2.0, "clamp_eps": null})).unwrap();
        assert_eq!(p.clamp_eps, None);
        let d: SphericalLayerParams =
            serde_json::from_value(json!({"R1": 1.0, "R2": 2.0})).unwrap();
        assert_eq!(d.clamp_eps, Some(DEFAULT_CLAMP_EPS));
    }
}
