//! Braid specifications, strands, words and the predictions attached to them.

pub mod predict;
pub mod spec;
pub mod strand;
pub mod word;

use thiserror::Error;

pub use predict::{reduce_tangle, spiral_predictions, tangle_notation, SpiralPrediction};
pub use spec::{default_lambda, LemniscateSpec};
pub use strand::{cable_strands, lemniscate_strands, rotating_strands, spec_strands, ExpTerm, TrigStrand};
pub use word::{
    braid_permutation, braid_word, crossing_signs, fig8_family_minimal_word, garside_element, rotating_word, BraidPermutation, BraidWord,
    EpsilonVector,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BraidError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("generator {letter} is not valid on {strands} strands")]
    InvalidGenerator { letter: i32, strands: u32 },
    #[error("tangle notation needs period 2, got r = {0}")]
    WrongPeriod(u32),
    #[error("strands come within {distance:e} of each other")]
    StrandCollision { distance: f64 },
}
