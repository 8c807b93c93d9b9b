//! Bour's surfaces in Minkowski 3-space.
//!
//! Spacelike maximal surfaces come from the Weierstrass representation
//! with data (ζ^{m-2}, ζ); timelike minimal surfaces from the null-curve
//! representation in null coordinates. Every closed form can be checked
//! against the finite-difference oracle in [`diffgeo`].

// `!(x > tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod diffgeo;
pub mod error;
pub mod format;
pub mod forms;
pub mod lorentz;
pub mod maximal;
pub mod mesh;
pub mod powers;
pub mod quadrature;
pub mod report;
pub mod timelike;
pub mod weierstrass;

pub use catalog::{BourParams, Chart, Family, Interval, Rational};
pub use diffgeo::{OracleConfig, ScanReport, SurfacePatch};
pub use error::{Error, Result};
pub use forms::{FirstForm, FormSample, SecondForm};
pub use lorentz::{CausalCharacter, Signature, Vec3L};
