//! Exact field construction: braid polynomials, semiholomorphic fields, their
//! spatial and four-dimensional real forms, and hopfion maps.

pub mod construct;
pub mod eval;
pub mod hopfion;
pub mod milnor;
pub mod presets;
pub mod stereo;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::braid::BraidError;

pub use construct::{braid_polynomial, braid_polynomial_reference, build_field, build_field_from_strands, integerize};
pub use eval::{evaluate, FieldValue, NumericSemiholo};
pub use hopfion::{hopfion_field, HopfionField, HopfionSpec, Profile};
pub use milnor::{brauner_polynomial, milnor_polynomial, RealPolynomial4};
pub use presets::Preset;
pub use stereo::{stereographic_substitute, SpatialPolynomial};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("the Milnor construction needs an even number of repeats, got r = {0}")]
    OddRepeats(u32),
    #[error("term with v^{ev} vb^{evb} has odd v-degree")]
    OddVExponent { ev: u32, evb: u32 },
    #[error("invalid hopfion: {0}")]
    InvalidHopfion(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
}
