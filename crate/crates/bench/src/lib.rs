//! Shared fixtures for the criterion benchmarks.

use knotfield_core::field::build_field;
use knotfield_core::field::eval::NumericSemiholo;
use knotfield_core::LemniscateSpec;

/// `L(s, 2, 2)` at λ = 1.
pub fn figure_eight_family(s: u32) -> LemniscateSpec {
    LemniscateSpec::new(s, 2, 2).expect("odd s is a valid spec")
}

pub fn numeric_field(spec: &LemniscateSpec) -> NumericSemiholo {
    NumericSemiholo::new(&build_field(spec).expect("lemniscate fields construct"))
}
