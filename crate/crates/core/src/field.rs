//! Material coefficient fields as finite sample sets.
//!
//! Essential infima and suprema over the domain are replaced by minima and
//! maxima over the samples, so every downstream verdict holds on the samples
//! only.

use std::collections::HashSet;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::media::CatalogModel;
use crate::tensor::ComplexTensor;

pub const DEFAULT_AXIS_COUNT: usize = 257;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePoint {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<[f64; 3]>,
    /// Reserved; ellipticity is a pointwise notion so weights are ignored.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

impl SamplePoint {
    pub fn new(id: impl Into<String>) -> Self {
        SamplePoint {
            id: id.into(),
            coords: None,
            weight: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    #[serde(flatten)]
    pub point: SamplePoint,
    pub tensor: ComplexTensor,
}

impl Sample {
    pub fn new(id: impl Into<String>, tensor: ComplexTensor) -> Self {
        Sample {
            point: SamplePoint::new(id),
            tensor,
        }
    }

    pub fn id(&self) -> &str {
        &self.point.id
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    #[serde(default = "default_count")]
    pub count: usize,
}

fn default_count() -> usize {
    DEFAULT_AXIS_COUNT
}

impl Axis {
    pub fn new(name: impl Into<String>, lo: f64, hi: f64, count: usize) -> Self {
        Axis {
            name: name.into(),
            lo,
            hi,
            count,
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(Error::Domain(format!(
                "axis `{}` has non-finite range",
                self.name
            )));
        }
        if self.count == 0 {
            return Err(Error::Domain(format!("axis `{}` has no nodes", self.name)));
        }
        let varying = self.count > 1;
        if varying && self.hi <= self.lo {
            return Err(Error::Domain(format!(
                "axis `{}` range [{}, {}] is degenerate",
                self.name, self.lo, self.hi
            )));
        }
        if !varying && self.hi != self.lo {
            return Err(Error::Domain(format!(
                "axis `{}` spans [{}, {}] but has a single node",
                self.name, self.lo, self.hi
            )));
        }
        Ok(())
    }

    /// Uniform nodes; grids with `count − 1` a power of two nest exactly.
    pub fn nodes(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * (k as f64 / n)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SamplingSpec {
    pub axes: Vec<Axis>,
}

impl SamplingSpec {
    pub fn radial(lo: f64, hi: f64, count: usize) -> Self {
        SamplingSpec {
            axes: vec![Axis::new("r", lo, hi, count)],
        }
    }

    /// Grid nodes in row-major order (last axis fastest).
    pub fn grid(&self) -> Result<Vec<Vec<(String, f64)>>> {
        let mut out: Vec<Vec<(String, f64)>> = vec![Vec::new()];
        for axis in &self.axes {
            axis.validate()?;
            let nodes = axis.nodes();
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    nodes.iter().map(move |&v| {
                        let mut p = prefix.clone();
                        p.push((axis.name.clone(), v));
                        p
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// Number of nodes along the finest axis.
    pub fn resolution(&self) -> Option<usize> {
        self.axes.iter().map(|a| a.count).max()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParametricSource {
    pub model: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantity: Option<String>,
    #[serde(default)]
    pub params: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampling: Option<SamplingSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FieldSource {
    Explicit { samples: Vec<Sample> },
    Parametric(ParametricSource),
}

/// A named coefficient field as it appears in a field file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaterialField {
    pub name: String,
    pub dim: usize,
    pub source: FieldSource,
}

/// A field evaluated on its samples, ready for certification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledField {
    pub name: String,
    pub dim: usize,
    pub samples: Vec<Sample>,
    /// Nodes along the finest sampling axis, when the field came from a grid.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
}

impl MaterialField {
    pub fn explicit(name: impl Into<String>, samples: Vec<Sample>) -> Result<Self> {
        let name = name.into();
        let dim = samples
            .first()
            .map(|s| s.tensor.dim())
            .ok_or_else(|| Error::EmptyField(name.clone()))?;
        Ok(MaterialField {
            name,
            dim,
            source: FieldSource::Explicit { samples },
        })
    }

    /// A single-sample field holding `tensor` everywhere.
    pub fn constant(name: impl Into<String>, tensor: ComplexTensor) -> Self {
        MaterialField {
            name: name.into(),
            dim: tensor.dim(),
            source: FieldSource::Explicit {
                samples: vec![Sample::new("x0", tensor)],
            },
        }
    }

    pub fn parametric(
        name: impl Into<String>,
        model: CatalogModel,
        quantity: Option<&str>,
        params: serde_json::Value,
        sampling: Option<SamplingSpec>,
    ) -> Result<Self> {
        let source = ParametricSource {
            model: model.id().to_string(),
            quantity: quantity.map(str::to_string),
            params,
            sampling,
        };
        let dim = model.dim(source.quantity.as_deref())?;
        Ok(MaterialField {
            name: name.into(),
            dim,
            source: FieldSource::Parametric(source),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn materialize(&self) -> Result<SampledField> {
        let (samples, resolution) = match &self.source {
            FieldSource::Explicit { samples } => (samples.clone(), None),
            FieldSource::Parametric(src) => {
                let model = CatalogModel::from_id(&src.model)?;
                let sampling = match &src.sampling {
                    Some(s) => s.clone(),
                    None => model.default_sampling(&src.params)?,
                };
                let grid = sampling.grid()?;
                let eval = model.evaluator(src.quantity.as_deref(), &src.params)?;
                let samples = grid
                    .par_iter()
                    .map(|node| eval.sample(node))
                    .collect::<Result<Vec<_>>>()?;
                let resolution = if sampling.axes.is_empty() {
                    None
                } else {
                    sampling.resolution()
                };
                (samples, resolution)
            }
        };
        let field = SampledField {
            name: self.name.clone(),
            dim: self.dim,
            samples,
            resolution,
        };
        field.validate()?;
        Ok(field)
    }
}

impl SampledField {
    pub fn new(name: impl Into<String>, samples: Vec<Sample>) -> Result<Self> {
        let name = name.into();
        let dim = samples
            .first()
            .map(|s| s.tensor.dim())
            .ok_or_else(|| Error::EmptyField(name.clone()))?;
        let f = SampledField {
            name,
            dim,
            samples,
            resolution: None,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn constant(name: impl Into<String>, tensor: ComplexTensor) -> Self {
        SampledField {
            name: name.into(),
            dim: tensor.dim(),
            samples: vec![Sample::new("x0", tensor)],
            resolution: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.samples.is_empty() {
            return Err(Error::EmptyField(self.name.clone()));
        }
        let mut seen = HashSet::new();
        for s in &self.samples {
            if s.tensor.dim() != self.dim {
                return Err(Error::Structural(format!(
                    "sample `{}` of field `{}` has dimension {}, expected {}",
                    s.id(),
                    self.name,
                    s.tensor.dim(),
                    self.dim
                )));
            }
            if !seen.insert(s.id()) {
                return Err(Error::Domain(format!(
                    "duplicate sample id `{}` in field `{}`",
                    s.id(),
                    self.name
                )));
            }
        }
        Ok(())
    }

    pub fn tensors(&self) -> impl Iterator<Item = &ComplexTensor> {
        self.samples.iter().map(|s| &s.tensor)
    }

    /// Applies `f` to every sample tensor, keeping sample points.
    pub fn map_tensors(
        &self,
        name: impl Into<String>,
        f: impl Fn(&ComplexTensor) -> Result<ComplexTensor>,
    ) -> Result<SampledField> {
        let samples = self
            .samples
            .iter()
            .map(|s| {
                Ok(Sample {
                    point: s.point.clone(),
                    tensor: f(&s.tensor)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SampledField {
            name: name.into(),
            dim: self.dim,
            samples,
            resolution: self.resolution,
        })
    }

    /// `ξ₊`: largest operator norm over the samples.
    pub fn sup_norm(&self) -> f64 {
        self.tensors()
            .map(ComplexTensor::operator_norm)
            .fold(0.0, f64::max)
    }

    /// Smallest modulus over the samples of a scalar field.
    pub fn inf_modulus(&self) -> Result<f64> {
        if self.dim != 1 {
            return Err(Error::Structural(format!(
                "inf_modulus needs a scalar field, `{}` has dimension {}",
                self.name, self.dim
            )));
        }
        Ok(self
            .tensors()
            .map(|t| t.get(0, 0).norm())
            .fold(f64::INFINITY, f64::min))
    }

    pub fn to_definition(&self) -> MaterialField {
        MaterialField {
            name: self.name.clone(),
            dim: self.dim,
            source: FieldSource::Explicit {
                samples: self.samples.clone(),
            },
        }
    }
}

/// `name=value` pairs joined by commas, e.g. `r=1.5`.
pub(crate) fn node_id(node: &[(String, f64)]) -> String {
    node.iter()
        .map(|(name, v)| format!("{name}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) fn node_coords(node: &[(String, f64)]) -> Option<[f64; 3]> {
    if node.is_empty() || node.len() > 3 {
        return None;
    }
    let mut c = [0.0; 3];
    for (slot, (_, v)) in c.iter_mut().zip(node) {
        *slot = *v;
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Complex;

    #[test]
    fn explicit_roundtrip_and_passthrough() {
        let text = r#"{
            "name": "eps",
            "dim": 1,
            "source": {"type": "explicit", "samples": [
                {"id": "a", "tensor": [[[1.0, 1.0]]]},
                {"id": "b", "coords": [0.0, 1.0, 2.0], "tensor": [[[2.0, 0.0]]]}
            ]}
        }"#;
        let f = MaterialField::from_json(text).unwrap();
        let s = f.materialize().unwrap();
        assert_eq!(s.samples.len(), 2);
        assert_eq!(s.samples[1].point.coords, Some([0.0, 1.0, 2.0]));
        assert_eq!(s.to_definition(), f);
        assert!((s.inf_modulus().unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(s.sup_norm(), 2.0);
    }

    #[test]
    fn rejects_duplicates_mixed_dims_and_empty() {
        let t1 = ComplexTensor::identity(1).unwrap();
        let t2 = ComplexTensor::identity(2).unwrap();
        assert!(SampledField::new("f", vec![Sample::new("a", t1), Sample::new("a", t1)]).is_err());
        assert!(SampledField::new("f", vec![Sample::new("a", t1), Sample::new("b", t2)]).is_err());
        assert!(matches!(
            SampledField::new("f", vec![]),
            Err(Error::EmptyField(_))
        ));
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = MaterialField::from_json("{\n  \"name\": 3,\n}").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn nested_axis_grids() {
        let coarse = Axis::new("r", 1.0, 2.0, 129).nodes();
        let fine = Axis::new("r", 1.0, 2.0, 257).nodes();
        for (k, v) in coarse.iter().enumerate() {
            assert_eq!(*v, fine[2 * k]);
        }
    }

    #[test]
    fn inf_modulus_needs_scalar() {
        let s = SampledField::constant("m", ComplexTensor::identity(3).unwrap());
        assert!(s.inf_modulus().is_err());
        let c = SampledField::constant(
            "c",
            ComplexTensor::scalar(1, Complex::new(1.0, 1.0)).unwrap(),
        );
        assert!((c.inf_modulus().unwrap() - 2f64.sqrt()).abs() < 1e-15);
    }
}
