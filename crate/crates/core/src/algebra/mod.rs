//! Exact arithmetic: rationals, Gaussian rationals, cyclotomic fields and the
//! polynomial types the constructions are written in.

pub mod cyclotomic;
pub mod gaussian;
pub mod laurent;
pub mod rational;
pub mod semiholo;
pub mod sparse;

use thiserror::Error;

pub use cyclotomic::{cyclo_mul, cyclo_to_gaussian, cyclotomic_polynomial, CyclotomicElement};
pub use gaussian::GaussianRational;
pub use laurent::{laurent_mul, to_semiholo, trig_term, ExpLaurentPoly, TrigKind, UPolynomial};
pub use rational::{parse_rational, Rational};
pub use semiholo::{Exponents, SemiholoPolynomial};
pub use sparse::SparsePoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("cannot parse {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },
    #[error("ℚ(ζ_{0}) does not contain i (order must be divisible by 4)")]
    OrderLacksI(u64),
    #[error("cannot embed ℚ(ζ_{from}) into ℚ(ζ_{to})")]
    InvalidPromotion { from: u64, to: u64 },
    #[error("coefficient is not in ℚ(i): {0}")]
    NotGaussian(String),
    #[error("exponent {exponent}/{denominator} of e^(ih) is not an integer")]
    NonIntegerExponent { exponent: i64, denominator: u64 },
    #[error("term u^{eu} v^{ev} vb^{evb} mixes v and its conjugate")]
    MixedTerm { eu: u32, ev: u32, evb: u32 },
}
