//! Burau representation and Alexander polynomials of braid closures.

pub mod alexander;
pub mod burau;
pub mod poly;

use thiserror::Error;

pub use alexander::{alexander_from_braid, genus_degree_check, murasugi_mod_check, theorem2_alexander, GenusReport};
pub use burau::{burau_of_letter, burau_of_word, BurauMatrix};
pub use poly::IntLaurentPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotError {
    #[error("closure has {0} components; only knots have a normalized Alexander polynomial here")]
    MultiComponent(usize),
    #[error("r = {0} is not a prime power")]
    NotPrimePower(u32),
    #[error("Burau minor {0} does not normalize to a knot Alexander polynomial")]
    Normalization(String),
}
