//! Dense complex `d×d` tensors for `d ∈ {1, 2, 3}`.
//!
//! Eigenvalues are computed in closed form: the Hermitian solver uses the
//! trigonometric form of the shifted characteristic polynomial followed by
//! one Rayleigh-quotient polish, the general solver uses complex Cardano
//! followed by one Newton step on the characteristic polynomial.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Relative tolerance for every structural classification.
pub const STRUCT_TOL: f64 = 1e-12;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

/// Structural class of a tensor, ordered from most to least structured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructuralClass {
    Scalar,
    #[serde(rename = "hermitian")]
    HermitianT,
    #[serde(rename = "normal")]
    NormalT,
    General,
}

impl fmt::Display for StructuralClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructuralClass::Scalar => "scalar",
            StructuralClass::HermitianT => "hermitian",
            StructuralClass::NormalT => "normal",
            StructuralClass::General => "general",
        })
    }
}

/// Which structure predicates hold for one tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Structure {
    pub scalar: bool,
    pub hermitian: bool,
    pub normal: bool,
}

impl Structure {
    pub fn class(self) -> StructuralClass {
        if self.scalar {
            StructuralClass::Scalar
        } else if self.hermitian {
            StructuralClass::HermitianT
        } else if self.normal {
            StructuralClass::NormalT
        } else {
            StructuralClass::General
        }
    }

    /// Predicates holding for both tensors.
    pub fn meet(self, other: Structure) -> Structure {
        Structure {
            scalar: self.scalar && other.scalar,
            hermitian: self.hermitian && other.hermitian,
            normal: self.normal && other.normal,
        }
    }
}

/// One value of a material coefficient: a dense complex `d×d` matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexTensor {
    dim: usize,
    m: [[Complex; 3]; 3],
}

impl ComplexTensor {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(ComplexTensor {
            dim,
            m: [[ZERO; 3]; 3],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::scalar(dim, ONE)
    }

    /// `c·I_d`.
    pub fn scalar(dim: usize, c: Complex) -> Result<Self> {
        let mut t = Self::zeros(dim)?;
        for i in 0..dim {
            t.m[i][i] = c;
        }
        t.check_finite()
    }

    pub fn diag(values: &[Complex]) -> Result<Self> {
        let mut t = Self::zeros(values.len())?;
        for (i, v) in values.iter().enumerate() {
            t.m[i][i] = *v;
        }
        t.check_finite()
    }

    pub fn from_rows<R: AsRef<[Complex]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.len();
        let mut t = Self::zeros(dim)?;
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::Structural(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            t.m[i][..dim].copy_from_slice(row);
        }
        t.check_finite()
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex) -> Result<Self> {
        let mut t = Self::zeros(dim)?;
        for i in 0..dim {
            for j in 0..dim {
                t.m[i][j] = f(i, j);
            }
        }
        t.check_finite()
    }

    fn check_finite(self) -> Result<Self> {
        if self.entries().all(|z| z.is_finite()) {
            Ok(self)
        } else {
            Err(Error::Domain("tensor has non-finite entries".into()))
        }
    }

    fn map(&self, f: impl Fn(Complex) -> Complex) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.m[i][j] = f(self.m[i][j]);
            }
        }
        out
    }

    fn entries(&self) -> impl Iterator<Item = Complex> + '_ {
        (0..self.dim).flat_map(move |i| (0..self.dim).map(move |j| self.m[i][j]))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex {
        assert!(
            i < self.dim && j < self.dim,
            "index ({i}, {j}) out of range"
        );
        self.m[i][j]
    }

    pub fn rows(&self) -> Vec<Vec<Complex>> {
        (0..self.dim)
            .map(|i| self.m[i][..self.dim].to_vec())
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.m[i][j] = self.m[j][i].conj();
            }
        }
        out
    }

    pub fn scale(&self, c: Complex) -> Self {
        self.map(|z| z * c)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.m[i][j] += other.m[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-ONE))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = *self;
        for i in 0..d {
            for j in 0..d {
                out.m[i][j] = (0..d).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        out
    }

    pub fn apply(&self, z: &[Complex]) -> Vec<Complex> {
        assert_eq!(z.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.m[i][j] * z[j]).sum())
            .collect()
    }

    /// `(ξz)·z̄`.
    pub fn quadratic_form(&self, z: &[Complex]) -> Complex {
        self.apply(z).iter().zip(z).map(|(a, b)| a * b.conj()).sum()
    }

    pub fn trace(&self) -> Complex {
        (0..self.dim).map(|i| self.m[i][i]).sum()
    }

    pub fn det(&self) -> Complex {
        let m = &self.m;
        match self.dim {
            1 => m[0][0],
            2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
            _ => {
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                    - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            }
        }
    }

    /// Inverse through the adjugate.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        let scale = self.frobenius_norm().powi(self.dim as i32);
        if det.norm() <= 1e-14 * scale || det.norm() == 0.0 {
            return Err(Error::Structural("tensor is singular".into()));
        }
        let m = &self.m;
        let mut out = *self;
        match self.dim {
            1 => out.m[0][0] = ONE / m[0][0],
            2 => {
                out.m[0][0] = m[1][1] / det;
                out.m[0][1] = -m[0][1] / det;
                out.m[1][0] = -m[1][0] / det;
                out.m[1][1] = m[0][0] / det;
            }
            _ => {
                for i in 0..3 {
                    for j in 0..3 {
                        // cofactor C_ji
                        let (r0, r1) = others(j);
                        let (c0, c1) = others(i);
                        let minor = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
                        let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                        out.m[i][j] = minor * sign / det;
                    }
                }
            }
        }
        out.check_finite()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `H(θ) = (e^{iθ}ξ + (e^{iθ}ξ)ᴴ)/2`, so that `z̄·(H z) = Re{e^{iθ}(ξz)·z̄}`.
    pub fn hermitian_part(&self, theta: f64) -> Self {
        let rotated = self.scale(Complex::from_polar(1.0, theta));
        rotated
            .add(&rotated.adjoint())
            .scale(Complex::new(0.5, 0.0))
    }

    pub fn is_hermitian(&self) -> bool {
        let n = self.frobenius_norm();
        self.sub(&self.adjoint()).frobenius_norm() <= STRUCT_TOL * n
    }

    pub fn structure(&self) -> Structure {
        let n = self.frobenius_norm();
        let scalar = self.dim == 1 || {
            let mean = self.trace() / self.dim as f64;
            self.sub(&Self::scalar(self.dim, mean).expect("finite mean"))
                .frobenius_norm()
                <= STRUCT_TOL * n
        };
        let hermitian = self.is_hermitian();
        let normal = hermitian || {
            let adj = self.adjoint();
            self.matmul(&adj).sub(&adj.matmul(self)).frobenius_norm() <= STRUCT_TOL * n * n
        };
        Structure {
            // a complex multiple of the identity is normal but not Hermitian
            scalar,
            hermitian,
            normal: normal || scalar,
        }
    }

    pub fn classify(&self) -> StructuralClass {
        self.structure().class()
    }

    /// Eigenvalues of a Hermitian tensor, ascending.
    pub fn eig_hermitian(&self) -> Result<Vec<f64>> {
        if !self.is_hermitian() {
            return Err(Error::Structural(
                "eig_hermitian called on a non-Hermitian tensor".into(),
            ));
        }
        let (vals, d) = self.hermitian_eigs();
        Ok(vals[..d].to_vec())
    }

    /// Ascending eigenvalues of the Hermitian part of `self` (the input is
    /// assumed Hermitian; only the upper triangle and real diagonal are read).
    pub(crate) fn hermitian_eigs(&self) -> ([f64; 3], usize) {
        let m = &self.m;
        match self.dim {
            1 => ([m[0][0].re, 0.0, 0.0], 1),
            2 => {
                let (a, d, b) = (m[0][0].re, m[1][1].re, m[0][1]);
                let mean = 0.5 * (a + d);
                let rad = (0.5 * (a - d)).hypot(b.norm());
                ([mean - rad, mean + rad, 0.0], 2)
            }
            _ => (hermitian_eigs3(self), 3),
        }
    }

    /// Smallest eigenvalue of a Hermitian tensor.
    pub(crate) fn min_hermitian_eig(&self) -> f64 {
        self.hermitian_eigs().0[0]
    }

    /// All eigenvalues with multiplicity, sorted by (re, im).
    ///
    /// Shifted QR iteration on the Hessenberg form, so well-conditioned
    /// eigenvalues (those of normal tensors in particular) are accurate to
    /// rounding even when repeated.
    pub fn eig_general(&self) -> Vec<Complex> {
        let mut vals = match self.dim {
            1 => vec![self.m[0][0]],
            n => qr_eigenvalues(self.m, n).unwrap_or_else(|| self.polynomial_roots()),
        };
        vals.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        vals
    }

    /// Eigenvalues from the characteristic polynomial (fallback path).
    fn polynomial_roots(&self) -> Vec<Complex> {
        let m = &self.m;
        if self.dim == 2 {
            let half_tr = 0.5 * self.trace();
            let det = self.det();
            let s = (half_tr * half_tr - det).sqrt();
            let big = if (half_tr + s).norm() >= (half_tr - s).norm() {
                half_tr + s
            } else {
                half_tr - s
            };
            let small = if big.norm() > 0.0 { det / big } else { ZERO };
            return vec![big, small];
        }
        let c2 = self.trace();
        let c1 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
            + m[1][1] * m[2][2]
            - m[1][2] * m[2][1];
        let c0 = self.det();
        let scale = self.frobenius_norm().max(f64::MIN_POSITIVE);
        cardano(c2, c1, c0)
            .into_iter()
            .map(|l| newton_polish(l, c2, c1, c0, scale))
            .collect()
    }

    /// Spectral norm: square root of the largest eigenvalue of `ξᴴξ`.
    pub fn operator_norm(&self) -> f64 {
        let gram = self.adjoint().matmul(self);
        let (vals, d) = gram.hermitian_eigs();
        vals[d - 1].max(0.0).sqrt()
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if (1..=3).contains(&dim) {
        Ok(())
    } else {
        Err(Error::Structural(format!(
            "tensor dimension {dim} not in {{1, 2, 3}}"
        )))
    }
}

fn others(k: usize) -> (usize, usize) {
    match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

fn cross(a: &[Complex; 3], b: &[Complex; 3]) -> [Complex; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn hermitian_eigs3(t: &ComplexTensor) -> [f64; 3] {
    let m = &t.m;
    let q = (m[0][0].re + m[1][1].re + m[2][2].re) / 3.0;
    let off = m[0][1].norm_sqr() + m[0][2].norm_sqr() + m[1][2].norm_sqr();
    let p2 =
        (m[0][0].re - q).powi(2) + (m[1][1].re - q).powi(2) + (m[2][2].re - q).powi(2) + 2.0 * off;
    let p = (p2 / 6.0).sqrt();
    if p == 0.0 {
        return [q; 3];
    }
    // B = (A − qI)/p, r = det(B)/2 ∈ [−1, 1]
    let b = |i: usize, j: usize| {
        let shift = if i == j { q } else { 0.0 };
        (m[i][j] - shift) / p
    };
    let det_b = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1))
        - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
        + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    let r = (0.5 * det_b.re).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let hi = q + 2.0 * p * phi.cos();
    let lo = q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
    let mid = 3.0 * q - hi - lo;
    let mut vals = [lo, mid, hi].map(|l| rayleigh_polish(t, l, p));
    vals.sort_by(f64::total_cmp);
    vals
}

/// One Rayleigh-quotient step with the eigenvector taken from the cross
/// product of two rows of `A − λI`. Skipped when the null space is not
/// one-dimensional to working precision.
fn rayleigh_polish(t: &ComplexTensor, lambda: f64, spread: f64) -> f64 {
    let mut rows = t.m;
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    let candidates = [
        cross(&rows[0], &rows[1]),
        cross(&rows[0], &rows[2]),
        cross(&rows[1], &rows[2]),
    ];
    let norm2 = |v: &[Complex; 3]| v.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let v = candidates
        .iter()
        .max_by(|a, b| norm2(a).total_cmp(&norm2(b)))
        .unwrap();
    let n2 = norm2(v);
    let row_scale = rows.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>();
    if n2 <= 1e-20 * row_scale * row_scale || n2 == 0.0 {
        return lambda;
    }
    // v = conj of the bilinear null vector is not needed: rows·v = 0 already
    let av = t.apply(v);
    let rq = av
        .iter()
        .zip(v)
        .map(|(a, b)| (a * b.conj()).re)
        .sum::<f64>()
        / n2;
    if (rq - lambda).abs() <= 1e-6 * (spread + lambda.abs()) {
        rq
    } else {
        lambda
    }
}

/// Unitary `(c, s)` with `[[c̄, s̄], [−s, c]]·(a, b) = (r, 0)`.
fn givens(a: Complex, b: Complex) -> (Complex, Complex) {
    let r = a.norm().hypot(b.norm());
    if r == 0.0 {
        (ONE, ZERO)
    } else {
        (a / r, b / r)
    }
}

/// Rows `i, i+1` of `h` (columns `cols`) multiplied by `[[c̄, s̄], [−s, c]]`.
fn rotate_rows(
    h: &mut [[Complex; 3]; 3],
    i: usize,
    (c, s): (Complex, Complex),
    cols: std::ops::RangeInclusive<usize>,
) {
    for j in cols {
        let (x, y) = (h[i][j], h[i + 1][j]);
        h[i][j] = c.conj() * x + s.conj() * y;
        h[i + 1][j] = -s * x + c * y;
    }
}

/// Columns `k, k+1` of `h` (rows `rows`) multiplied by the adjoint rotation.
fn rotate_cols(
    h: &mut [[Complex; 3]; 3],
    k: usize,
    (c, s): (Complex, Complex),
    rows: std::ops::RangeInclusive<usize>,
) {
    for i in rows {
        let (x, y) = (h[i][k], h[i][k + 1]);
        h[i][k] = x * c + y * s;
        h[i][k + 1] = -x * s.conj() + y * c.conj();
    }
}

/// Eigenvalues of the leading `n×n` block by Wilkinson-shifted QR; `None`
/// if the iteration stalls.
fn qr_eigenvalues(mut h: [[Complex; 3]; 3], n: usize) -> Option<Vec<Complex>> {
    if n == 3 && h[2][0] != ZERO {
        let g = givens(h[1][0], h[2][0]);
        rotate_rows(&mut h, 1, g, 0..=2);
        rotate_cols(&mut h, 1, g, 0..=2);
        h[2][0] = ZERO;
    }
    let norm = h.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let negligible = |h: &[[Complex; 3]; 3], i: usize| {
        let mut s = h[i][i].norm() + h[i - 1][i - 1].norm();
        if s == 0.0 {
            s = norm;
        }
        h[i][i - 1].norm() <= f64::EPSILON * s
    };
    let mut hi = n - 1;
    let mut iters = 0;
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 && !negligible(&h, lo) {
            lo -= 1;
        }
        if lo == hi {
            h[hi][hi - 1] = ZERO;
            hi -= 1;
            iters = 0;
            continue;
        }
        iters += 1;
        if iters > 200 {
            return None;
        }
        let (a, b, c, d) = (h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi]);
        let half = 0.5 * (a - d);
        let root = (half * half + b * c).sqrt();
        let mut mu = if (half + root).norm() >= (half - root).norm() {
            d - b * c / (half + root)
        } else {
            d - b * c / (half - root)
        };
        if !mu.is_finite() {
            mu = d;
        }
        if iters % 11 == 10 {
            // exceptional shift against cycling
            mu += Complex::new(0.75 * c.norm(), 0.0);
        }
        for k in lo..=hi {
            h[k][k] -= mu;
        }
        let mut rots = [(ONE, ZERO); 2];
        for k in lo..hi {
            let g = givens(h[k][k], h[k + 1][k]);
            rotate_rows(&mut h, k, g, k..=hi);
            rots[k - lo] = g;
        }
        for k in lo..hi {
            rotate_cols(&mut h, k, rots[k - lo], lo..=hi);
        }
        for k in lo..=hi {
            h[k][k] += mu;
        }
    }
    Some((0..n).map(|i| h[i][i]).collect())
}

/// Roots of `λ³ − c2 λ² + c1 λ − c0`.
fn cardano(c2: Complex, c1: Complex, c0: Complex) -> [Complex; 3] {
    // λ³ + aλ² + bλ + c with λ = t − a/3 gives t³ + pt + q
    let (a, b, c) = (-c2, c1, -c0);
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let shift = -a / 3.0;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let w1 = -q / 2.0 + disc;
    let w2 = -q / 2.0 - disc;
    let w = if w1.norm() >= w2.norm() { w1 } else { w2 };
    if w.norm() == 0.0 {
        return [shift; 3];
    }
    let u = w.cbrt();
    let v = -p / (3.0 * u);
    let omega = Complex::new(-0.5, 3f64.sqrt() / 2.0);
    let omega2 = omega.conj();
    [
        u + v + shift,
        omega * u + omega2 * v + shift,
        omega2 * u + omega * v + shift,
    ]
}

fn newton_polish(l: Complex, c2: Complex, c1: Complex, c0: Complex, scale: f64) -> Complex {
    let poly = |x: Complex| ((x - c2) * x + c1) * x - c0;
    let deriv = |x: Complex| (3.0 * x - 2.0 * c2) * x + c1;
    let d = deriv(l);
    if d.norm() <= 1e-8 * scale * scale {
        return l;
    }
    let next = l - poly(l) / d;
    if next.is_finite() && poly(next).norm() < poly(l).norm() {
        next
    } else {
        l
    }
}

impl Serialize for ComplexTensor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| [self.m[i][j].re, self.m[i][j].im])
                    .collect()
            })
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexTensor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(d)?;
        let rows: Vec<Vec<Complex>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(|[re, im]| Complex::new(re, im)).collect())
            .collect();
        ComplexTensor::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn hermitian_part_examples() {
        let id = ComplexTensor::identity(3).unwrap();
        assert_eq!(id.hermitian_part(0.0), id);
        let ii = ComplexTensor::scalar(3, c(0.0, 1.0)).unwrap();
        let h = ii.hermitian_part(-FRAC_PI_2);
        assert!(h.sub(&id).frobenius_norm() < 1e-15);
    }

    #[test]
    fn eig_hermitian_examples() {
        let d = ComplexTensor::diag(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        let v = d.eig_hermitian().unwrap();
        for (got, want) in v.iter().zip([1.0, 2.0, 3.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-14);
        }
        let g =
            ComplexTensor::from_rows(&[[c(5.0, 0.0), c(0.0, 2.0)], [c(0.0, -2.0), c(5.0, 0.0)]])
                .unwrap();
        let v = g.eig_hermitian().unwrap();
        assert_abs_diff_eq!(v[0], 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(v[1], 7.0, epsilon = 1e-14);
    }

    #[test]
    fn eig_hermitian_rejects_non_hermitian() {
        let j = ComplexTensor::from_rows(&[[c(1.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]])
            .unwrap();
        assert!(matches!(j.eig_hermitian(), Err(Error::Structural(_))));
    }

    #[test]
    fn eig_general_diagonal_and_gyrotropic() {
        let d = ComplexTensor::diag(&[c(1.0, 1.0), c(2.0, 0.0), c(0.0, -3.0)]).unwrap();
        let v = d.eig_general();
        let want = [c(0.0, -3.0), c(1.0, 1.0), c(2.0, 0.0)];
        for (got, w) in v.iter().zip(want) {
            assert!((got - w).norm() < 1e-12, "{got} vs {w}");
        }
        let (e1, e2, e3) = (c(1.0, 0.5), c(0.0, 0.2), c(2.0, 0.0));
        let i = c(0.0, 1.0);
        let g =
            ComplexTensor::from_rows(&[[e1, i * e2, ZERO], [-i * e2, e1, ZERO], [ZERO, ZERO, e3]])
                .unwrap();
        let v = g.eig_general();
        let mut want = vec![e1 + e2, e1 - e2, e3];
        want.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        for (got, w) in v.iter().zip(want) {
            assert!((got - w).norm() < 1e-12, "{got} vs {w}");
        }
    }

    #[test]
    fn eig_general_repeated_normal() {
        // unitary similarity of diag(2, 3, 3)
        let (a, b) = (0.6, 0.8);
        let q = ComplexTensor::from_rows(&[
            [c(a, 0.0), c(0.0, b), ZERO],
            [c(0.0, b), c(a, 0.0), ZERO],
            [ZERO, ZERO, ONE],
        ])
        .unwrap();
        let d = ComplexTensor::diag(&[c(2.0, 0.0), c(3.0, 0.0), c(3.0, 0.0)]).unwrap();
        let t = q.matmul(&d).matmul(&q.adjoint());
        let v = t.eig_general();
        for (got, w) in v.iter().zip([2.0, 3.0, 3.0]) {
            assert!((got - c(w, 0.0)).norm() < 1e-14, "{got} vs {w}");
        }
    }

    #[test]
    fn eig_general_triple_root() {
        let j = ComplexTensor::from_rows(&[[ONE, ONE, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]])
            .unwrap();
        for l in j.eig_general() {
            assert!((l - ONE).norm() < 1e-6, "{l}");
        }
    }

    #[test]
    fn operator_norm_examples() {
        assert_abs_diff_eq!(
            ComplexTensor::identity(3).unwrap().operator_norm(),
            1.0,
            epsilon = 1e-15
        );
        let d = ComplexTensor::diag(&[c(3.0, 0.0), c(0.0, -4.0), ZERO]).unwrap();
        assert_abs_diff_eq!(d.operator_norm(), 4.0, epsilon = 1e-14);
    }

    #[test]
    fn classification() {
        let (e1, e2) = (c(1.3, 0.4), c(-0.2, 0.7));
        let i = c(0.0, 1.0);
        let g = ComplexTensor::from_rows(&[[e1, i * e2], [-i * e2, e1]]).unwrap();
        assert_eq!(g.classify(), StructuralClass::NormalT);
        let r = ComplexTensor::diag(&[c(1.0, 0.0), c(-2.0, 0.0)]).unwrap();
        assert_eq!(r.classify(), StructuralClass::HermitianT);
        let j = ComplexTensor::from_rows(&[[ONE, ONE], [ZERO, ONE]]).unwrap();
        assert_eq!(j.classify(), StructuralClass::General);
        let s = ComplexTensor::scalar(3, c(1.0, 1.0)).unwrap();
        assert_eq!(s.classify(), StructuralClass::Scalar);
        assert!(!s.structure().hermitian);
        assert_eq!(
            ComplexTensor::scalar(1, c(2.0, -1.0)).unwrap().classify(),
            StructuralClass::Scalar
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let t = ComplexTensor::from_rows(&[
            [c(2.0, 1.0), c(0.3, 0.0), c(0.0, -0.2)],
            [c(0.1, 0.1), c(1.0, 0.5), c(0.4, 0.0)],
            [c(0.0, 0.0), c(-0.3, 0.2), c(1.5, -0.1)],
        ])
        .unwrap();
        let prod = t.matmul(&t.inverse().unwrap());
        assert!(
            prod.sub(&ComplexTensor::identity(3).unwrap())
                .frobenius_norm()
                < 1e-14
        );
        let singular = ComplexTensor::diag(&[ONE, ZERO]).unwrap();
        assert!(singular.inverse().is_err());
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(ComplexTensor::zeros(4).is_err());
        assert!(ComplexTensor::from_rows(&[vec![ONE, ONE], vec![ONE]]).is_err());
        assert!(ComplexTensor::scalar(2, c(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let t = ComplexTensor::from_rows(&[[c(1.0, 2.0), c(3.0, 4.0)], [c(5.0, 6.0), c(7.0, 8.0)]])
            .unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, "[[[1.0,2.0],[3.0,4.0]],[[5.0,6.0],[7.0,8.0]]]");
        let back: ComplexTensor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
