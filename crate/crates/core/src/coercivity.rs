//! Coercivity of the Dirichlet, Neumann and Robin sesquilinear forms.
//!
//! With `Re{−e^{iθ}a(u,u)}` split into a curl term (tensor `−μ⁻¹`), a mass
//! term (`ω²ε`) and for Robin a boundary term (`α`), the coercivity constant
//! at `θ` is the smallest of the three ellipticity constants at `θ`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::arcset::{canonicalize, ArcSet};
use crate::certify::{
    certify, inverse_certificate, scale_certificate, scan_angles, CertifyOptions,
    EllipticityCertificate, XiMinus, COARSE_POINTS, REFINE_TOL,
};
use crate::error::{Error, Result};
use crate::field::{MaterialField, SampledField};
use crate::optimize::scan_then_refine;
use crate::tensor::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
    Robin,
}

/// Hypotheses that cannot be checked from samples.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assertions {
    #[serde(default)]
    pub geometry_i: bool,
    #[serde(default)]
    pub geometry_ii: bool,
    #[serde(default)]
    pub alpha_regularity: bool,
}

/// A field given inline or as a path relative to the problem file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldRef {
    Path { path: PathBuf },
    Inline(MaterialField),
}

impl FieldRef {
    fn load(&self, base: Option<&Path>) -> Result<MaterialField> {
        match self {
            FieldRef::Inline(f) => Ok(f.clone()),
            FieldRef::Path { path } => {
                let full = match base {
                    Some(b) if path.is_relative() => b.join(path),
                    _ => path.clone(),
                };
                MaterialField::from_path(full)
            }
        }
    }
}

impl From<MaterialField> for FieldRef {
    fn from(f: MaterialField) -> Self {
        FieldRef::Inline(f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub bc: BoundaryCondition,
    pub omega: f64,
    pub eps: FieldRef,
    pub mu: FieldRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<FieldRef>,
    #[serde(default)]
    pub user_asserted: Assertions,
}

impl ProblemSpec {
    pub fn new(bc: BoundaryCondition, omega: f64, eps: MaterialField, mu: MaterialField) -> Self {
        ProblemSpec {
            bc,
            omega,
            eps: eps.into(),
            mu: mu.into(),
            alpha: None,
            user_asserted: Assertions::default(),
        }
    }

    pub fn with_alpha(mut self, alpha: MaterialField) -> Self {
        self.alpha = Some(alpha.into());
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Outcome of one hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    UserAsserted,
    NotAsserted,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// Constant at one direction, term by term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Breakdown {
    pub theta: f64,
    /// Sharp constant of `−μ⁻¹`, from the explicitly inverted samples.
    pub curl_term: f64,
    /// `ω²ε₋(θ)`.
    pub mass_term: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary_term: Option<f64>,
    pub c: f64,
    /// `μ₋μ₊⁻²` with `μ₋` the constant of `−μ` at `−θ`.
    pub ratio_curl_term: f64,
    pub ratio_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Coercive,
    FredholmOnly,
    Inconclusive,
}

impl Verdict {
    pub fn message(self) -> &'static str {
        match self {
            Verdict::Coercive => "coercive ⇒ Hadamard well-posed with C = C_coe⁻¹",
            Verdict::FredholmOnly => "Fredholm-sense only, not certified coercive",
            Verdict::Inconclusive => "inconclusive: material hypotheses fail on the samples",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaSets {
    pub eps: ArcSet,
    pub mu: ArcSet,
    pub neg_mu_inv: ArcSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<ArcSet>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoercivityReport {
    pub bc: BoundaryCondition,
    pub omega: f64,
    pub hypotheses: Vec<HypothesisCheck>,
    pub theta_sets: ThetaSets,
    pub theta_common: ArcSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub breakdown: Option<Breakdown>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_bound_at_theta_star: Option<f64>,
    /// Width of the set of maximizers, when it is not a single point.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plateau_width: Option<f64>,
    pub verdict: Verdict,
    pub verdict_text: String,
    pub warnings: Vec<String>,
    pub note: String,
}

/// Optimal coercivity direction and constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Optimum {
    pub theta_star: f64,
    pub c_star: f64,
    pub plateau_width: Option<f64>,
}

/// A problem with its fields sampled and certified.
#[derive(Debug, Clone)]
pub struct Problem {
    pub bc: BoundaryCondition,
    pub omega: f64,
    pub assertions: Assertions,
    pub eps: SampledField,
    pub mu: SampledField,
    pub alpha: Option<SampledField>,
    /// `−μ⁻¹` on the samples of `μ`, when `μ` is invertible there.
    pub neg_mu_inv: Option<SampledField>,
    pub cert_eps: EllipticityCertificate,
    pub cert_mu: EllipticityCertificate,
    pub cert_neg_mu_inv: Option<EllipticityCertificate>,
    pub cert_alpha: Option<EllipticityCertificate>,
    eval_eps: XiMinus,
    eval_curl: Option<XiMinus>,
    eval_alpha: Option<XiMinus>,
    eval_mu: XiMinus,
    mu_plus: f64,
}

impl Problem {
    pub fn from_spec(spec: &ProblemSpec, opts: &CertifyOptions) -> Result<Self> {
        Self::from_spec_at(spec, None, opts)
    }

    pub fn from_path(path: impl AsRef<Path>, opts: &CertifyOptions) -> Result<Self> {
        let path = path.as_ref();
        let spec = ProblemSpec::from_json(&std::fs::read_to_string(path)?)?;
        Self::from_spec_at(&spec, path.parent(), opts)
    }

    fn from_spec_at(
        spec: &ProblemSpec,
        base: Option<&Path>,
        opts: &CertifyOptions,
    ) -> Result<Self> {
        if !(spec.omega.is_finite() && spec.omega > 0.0) {
            return Err(Error::Problem(format!(
                "omega must be positive, got {}",
                spec.omega
            )));
        }
        let eps = spec.eps.load(base)?.materialize()?;
        let mu = spec.mu.load(base)?.materialize()?;
        for f in [&eps, &mu] {
            if f.dim != 3 {
                return Err(Error::Problem(format!(
                    "field `{}` must be 3×3, got dimension {}",
                    f.name, f.dim
                )));
            }
        }
        let alpha = match (&spec.alpha, spec.bc) {
            (Some(a), BoundaryCondition::Robin) => {
                let a = a.load(base)?.materialize()?;
                if a.dim != 2 {
                    return Err(Error::Problem(format!(
                        "impedance field `{}` must be 2×2, got dimension {}",
                        a.name, a.dim
                    )));
                }
                Some(a)
            }
            (None, BoundaryCondition::Robin) => {
                return Err(Error::Problem("Robin problem needs an alpha field".into()))
            }
            (Some(_), bc) => {
                return Err(Error::Problem(format!(
                    "alpha is only used with Robin conditions, not {bc:?}"
                )))
            }
            (None, _) => None,
        };
        let cert_eps = certify(&eps, opts)?;
        let cert_mu = certify(&mu, opts)?;
        let neg_mu_inv = mu
            .map_tensors(format!("-inverse({})", mu.name), |t| {
                Ok(t.inverse()?.scale(Complex::new(-1.0, 0.0)))
            })
            .ok();
        let cert_neg_mu_inv = if cert_mu.is_elliptic() {
            Some(scale_certificate(
                &inverse_certificate(&cert_mu)?,
                Complex::new(-1.0, 0.0),
            )?)
        } else {
            None
        };
        let cert_alpha = alpha.as_ref().map(|a| certify(a, opts)).transpose()?;
        Ok(Problem {
            bc: spec.bc,
            omega: spec.omega,
            assertions: spec.user_asserted,
            eval_eps: XiMinus::new(&eps)?,
            eval_curl: neg_mu_inv.as_ref().map(XiMinus::new).transpose()?,
            eval_alpha: alpha.as_ref().map(XiMinus::new).transpose()?,
            eval_mu: XiMinus::new(&mu)?,
            mu_plus: mu.sup_norm(),
            eps,
            mu,
            alpha,
            neg_mu_inv,
            cert_eps,
            cert_mu,
            cert_neg_mu_inv,
            cert_alpha,
        })
    }

    fn neg_mu_inv_set(&self) -> ArcSet {
        self.cert_neg_mu_inv
            .as_ref()
            .map(|c| c.theta_set.clone())
            .unwrap_or_default()
    }

    pub fn check_hypotheses(&self) -> Vec<HypothesisCheck> {
        let mut out = Vec::new();
        let asserted = |name: &str, flag: bool, what: &str| HypothesisCheck {
            name: name.to_string(),
            status: if flag {
                Status::UserAsserted
            } else {
                Status::NotAsserted
            },
            detail: what.to_string(),
        };
        let pass = |b: bool| if b { Status::Pass } else { Status::Fail };
        out.push(asserted(
            "geometry_i",
            self.assertions.geometry_i,
            "bounded Lipschitz domain",
        ));
        out.push(asserted(
            "geometry_ii",
            self.assertions.geometry_ii,
            "C² or polyhedral boundary",
        ));
        let (e, m) = (self.cert_eps.is_elliptic(), self.cert_mu.is_elliptic());
        out.push(HypothesisCheck {
            name: "medium_i".into(),
            status: pass(e && m),
            detail: format!(
                "eps {}, mu {}",
                if e { "elliptic" } else { "not elliptic" },
                if m { "elliptic" } else { "not elliptic" }
            ),
        });
        let neg = self.neg_mu_inv_set();
        match &self.cert_alpha {
            Some(ca) => {
                out.push(HypothesisCheck {
                    name: "medium_ii".into(),
                    status: pass(ca.is_elliptic()),
                    detail: format!("alpha Θ = {}", ca.theta_set),
                });
                out.push(asserted(
                    "alpha_regularity",
                    self.assertions.alpha_regularity,
                    "additional regularity of alpha",
                ));
                let meet = neg.intersect(&ca.theta_set);
                out.push(HypothesisCheck {
                    name: "medium_iii".into(),
                    status: pass(!meet.is_empty()),
                    detail: format!("Θ(-mu⁻¹) ∩ Θ(alpha) = {meet}"),
                });
            }
            None => {
                for name in ["medium_ii", "alpha_regularity", "medium_iii"] {
                    out.push(HypothesisCheck {
                        name: name.into(),
                        status: Status::NotApplicable,
                        detail: "no Robin condition".into(),
                    });
                }
            }
        }
        let meet = self.cert_eps.theta_set.intersect(&neg);
        out.push(HypothesisCheck {
            name: "medium_iv".into(),
            status: pass(!meet.is_empty()),
            detail: format!("Θ(eps) ∩ Θ(-mu⁻¹) = {meet}"),
        });
        out
    }

    /// Intersection of the Θ-sets of `ε`, `−μ⁻¹` and (Robin) `α`.
    pub fn theta_common(&self) -> Result<ArcSet> {
        for c in [&self.cert_eps, &self.cert_mu]
            .into_iter()
            .chain(self.cert_alpha.as_ref())
        {
            if !c.is_elliptic() {
                return Err(Error::NotElliptic(c.field_name.clone()));
            }
        }
        let mut set = self.cert_eps.theta_set.intersect(&self.neg_mu_inv_set());
        if let Some(a) = &self.cert_alpha {
            set = set.intersect(&a.theta_set);
        }
        Ok(set)
    }

    /// Terms at `θ` without checking that `θ` is a common direction.
    pub fn breakdown_at(&self, theta: f64) -> Breakdown {
        let curl = self
            .eval_curl
            .as_ref()
            .map_or(f64::NEG_INFINITY, |e| e.eval(theta));
        let mass = self.omega * self.omega * self.eval_eps.eval(theta);
        let boundary = self.eval_alpha.as_ref().map(|e| e.eval(theta));
        let c = boundary.map_or(curl.min(mass), |b| curl.min(mass).min(b));
        // −μ⁻¹ = (−μ)⁻¹ and −μ = e^{iπ}μ
        let ratio_curl =
            self.eval_mu.eval(std::f64::consts::PI - theta) / (self.mu_plus * self.mu_plus);
        let ratio = boundary.map_or(ratio_curl.min(mass), |b| ratio_curl.min(mass).min(b));
        Breakdown {
            theta,
            curl_term: curl,
            mass_term: mass,
            boundary_term: boundary,
            c,
            ratio_curl_term: ratio_curl,
            ratio_bound: ratio,
        }
    }

    /// Coercivity constant at a common direction `θ`.
    pub fn coercivity_constant(&self, theta: f64) -> Result<Breakdown> {
        let common = self.theta_common()?;
        let b = self.breakdown_at(theta);
        if !common.contains(theta) || b.c <= 0.0 {
            return Err(Error::OutsideCommonSet {
                theta,
                curl_term: b.curl_term,
                mass_term: b.mass_term,
                boundary_term: b.boundary_term,
            });
        }
        Ok(b)
    }

    /// Best direction: coarse scan plus golden section on every common arc.
    pub fn maximize(&self) -> Result<Optimum> {
        let common = self.theta_common()?;
        if common.is_empty() {
            return Err(Error::Problem("common Θ-set is empty".into()));
        }
        let c = |t: f64| self.breakdown_at(t).c;
        let mut best: Option<(f64, f64, f64, f64)> = None;
        for arc in common.arcs() {
            let (lo, hi) = (arc.start, arc.start + arc.width);
            let m = scan_then_refine(c, lo, hi, COARSE_POINTS, REFINE_TOL);
            let better = match best {
                None => true,
                Some((_, v, _, _)) => m.value > v,
            };
            if better {
                best = Some((m.x, m.value, lo, hi));
            }
        }
        let (x, v, lo, hi) = best.expect("nonempty common set has arcs");
        let (left, right) = plateau(&c, x, v, lo, hi);
        let width = right - left;
        let theta = if width > 1e-6 { left } else { x };
        Ok(Optimum {
            theta_star: canonicalize(theta)?.radians(),
            c_star: c(theta),
            plateau_width: (width > 1e-6).then_some(width),
        })
    }

    /// `c(θ)` and its terms on `n` uniform directions.
    pub fn curve(&self, n: usize) -> Vec<Breakdown> {
        scan_angles(n)
            .into_iter()
            .map(|t| self.breakdown_at(t))
            .collect()
    }

    pub fn report(&self) -> CoercivityReport {
        let hypotheses = self.check_hypotheses();
        let mut warnings = Vec::new();
        if !self.assertions.geometry_i || !self.assertions.geometry_ii {
            warnings.push(
                "geometry hypotheses are not machine-checkable and were not asserted".to_string(),
            );
        }
        if self.bc == BoundaryCondition::Robin && !self.assertions.alpha_regularity {
            warnings.push("alpha regularity was not asserted".to_string());
        }
        let medium_i = self.cert_eps.is_elliptic() && self.cert_mu.is_elliptic();
        let common = self.theta_common().unwrap_or_default();
        let optimum = if common.is_empty() {
            None
        } else {
            self.maximize().ok()
        };
        let breakdown = optimum.map(|o| self.breakdown_at(o.theta_star));
        let verdict = match optimum {
            Some(o) if o.c_star > 0.0 => Verdict::Coercive,
            _ if medium_i => Verdict::FredholmOnly,
            _ => Verdict::Inconclusive,
        };
        CoercivityReport {
            bc: self.bc,
            omega: self.omega,
            hypotheses,
            theta_sets: ThetaSets {
                eps: self.cert_eps.theta_set.clone(),
                mu: self.cert_mu.theta_set.clone(),
                neg_mu_inv: self.neg_mu_inv_set(),
                alpha: self.cert_alpha.as_ref().map(|c| c.theta_set.clone()),
            },
            theta_common: common,
            theta_star: optimum.map(|o| o.theta_star),
            c_star: optimum.map(|o| o.c_star),
            breakdown,
            ratio_bound_at_theta_star: breakdown.map(|b| b.ratio_bound),
            plateau_width: optimum.and_then(|o| o.plateau_width),
            verdict,
            verdict_text: verdict.message().to_string(),
            warnings,
            note: format!(
                "certified on samples: eps {}, mu {}{}",
                self.eps.samples.len(),
                self.mu.samples.len(),
                self.alpha
                    .as_ref()
                    .map(|a| format!(", alpha {}", a.samples.len()))
                    .unwrap_or_default()
            ),
        }
    }
}

/// Extent of `{c ≥ c* − tol}` around `x` inside `[lo, hi]`; `c` is concave
/// on the arc, so this set is an interval.
fn plateau(c: &impl Fn(f64) -> f64, x: f64, v: f64, lo: f64, hi: f64) -> (f64, f64) {
    let tol = 1e-13 * v.abs().max(1.0);
    let on = |t: f64| c(t) >= v - tol;
    let edge = |mut inside: f64, mut outside: f64| {
        if on(outside) {
            return outside;
        }
        while (outside - inside).abs() > 1e-12 {
            let mid = 0.5 * (inside + outside);
            if on(mid) {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        inside
    };
    (edge(x, lo), edge(x, hi))
}
