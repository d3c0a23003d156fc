//! Exact construction and numerical certification of lemniscate knot fields.
//!
//! Strands are trigonometric sums `Z_j(h)`; their braid polynomial
//! `Π_j (u - λ Z_j(h))` is expanded over a cyclotomic field and turned into a
//! semiholomorphic polynomial `f(u, v, v̄)` whose zero set on `S³` is the closed braid.
//! The [`verify`] module checks this numerically.

pub mod algebra;
pub mod braid;
pub mod field;
pub mod knot;
pub mod verify;

pub use algebra::{AlgebraError, GaussianRational, Rational, SemiholoPolynomial};
pub use braid::{BraidError, BraidWord, LemniscateSpec, TrigStrand};
pub use field::{FieldError, HopfionSpec, Preset, RealPolynomial4, SpatialPolynomial};
pub use knot::{IntLaurentPoly, KnotError};
pub use verify::{NodalCurve, VerifyError, VerifyOptions};
