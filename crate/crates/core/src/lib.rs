//! Ellipticity certificates for complex material tensor fields, circular
//! arc algebra for sets of ellipticity directions, and coercivity constants
//! of time-harmonic Maxwell sesquilinear forms.
//!
//! A field is sampled ([`SampledField`]), certified ([`certify()`]) into an
//! [`EllipticityCertificate`] whose Θ-set is an [`ArcSet`], and a
//! [`Problem`] combines the certificates of `ε`, `μ` and a Robin `α`
//! into an optimal coercivity direction.

pub mod arcset;
pub mod certify;
pub mod cli;
pub mod coercivity;
pub mod error;
pub mod field;
pub mod media;
pub mod optimize;
pub mod tensor;
pub mod verify;

pub use arcset::{Arc, ArcSet};
pub use certify::{certify, CertifyOptions, EllipticityCertificate, Method};
pub use coercivity::{BoundaryCondition, CoercivityReport, Problem, ProblemSpec, Verdict};
pub use error::{Error, Result};
pub use field::{MaterialField, Sample, SampledField};
pub use media::CatalogModel;
pub use tensor::{Complex, ComplexTensor, StructuralClass};
