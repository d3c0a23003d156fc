//! Named constructions used throughout the CLI, benches and tests.

use std::fmt;
use std::str::FromStr;

use super::hopfion::HopfionSpec;
use super::FieldError;
use crate::algebra::gaussian::GaussianRational;
use crate::algebra::rational::{int, rat, Rational};
use crate::algebra::semiholo::SemiholoPolynomial;
use crate::braid::{cable_strands, LemniscateSpec, TrigStrand};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Fig8,
    F5r2,
    F4r3,
    Cable13n4587,
    Fig8HopfPaper,
    Borromean,
}

impl Preset {
    pub const ALL: [Preset; 6] = [Preset::Fig8, Preset::F5r2, Preset::F4r3, Preset::Cable13n4587, Preset::Fig8HopfPaper, Preset::Borromean];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Fig8 => "fig8",
            Preset::F5r2 => "f5r2",
            Preset::F4r3 => "f4r3",
            Preset::Cable13n4587 => "cable-13n4587",
            Preset::Fig8HopfPaper => "fig8hopf-paper",
            Preset::Borromean => "borromean",
        }
    }

    /// Lemniscate spec behind the preset; `None` for the cable and the hand-tuned hopfion.
    pub fn spec(&self) -> Option<LemniscateSpec> {
        let spec = match self {
            Preset::Fig8 => LemniscateSpec::with_params(3, 2, 2, int(1), int(1), int(1)),
            Preset::F5r2 => LemniscateSpec::with_params(5, 2, 2, int(1), int(1), int(1)),
            Preset::F4r3 => LemniscateSpec::with_params(4, 2, 3, rat(1, 2), rat(1, 2), int(1)),
            Preset::Borromean => LemniscateSpec::with_params(3, 3, 2, int(1), int(1), int(1)),
            Preset::Cable13n4587 | Preset::Fig8HopfPaper => return None,
        };
        Some(spec.expect("preset parameters are valid"))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| FieldError::UnknownPreset(s.to_string()))
    }
}

/// Two strands `±e^{3ih/2}` of the trefoil, each replaced by the pair `±(i/4)e^{ih/4}`.
pub fn cable_13n4587_strands() -> Vec<TrigStrand> {
    let outer = TrigStrand::single(GaussianRational::from_ints(1, 0), rat(3, 2));
    let epicycle = TrigStrand::single(GaussianRational::new(int(0), rat(1, 4)), rat(1, 4));
    cable_strands(&outer, 2, &[epicycle.clone(), epicycle.negated()]).expect("cable strands are disjoint")
}

/// `64u³ - 12u(2v^r - 2v̄^r + 3/2) - (14v^r + 14v̄^r + v^{2r} - v̄^{2r})`.
pub fn fig8hopf_paper_denominator(r: u32) -> SemiholoPolynomial {
    SemiholoPolynomial::from_int_terms(&[
        (3, 0, 0, 64, 0),
        (1, 0, 0, -18, 0),
        (1, r, 0, -24, 0),
        (1, 0, r, 24, 0),
        (0, r, 0, -14, 0),
        (0, 0, r, -14, 0),
        (0, 2 * r, 0, -1, 0),
        (0, 0, 2 * r, 1, 0),
    ])
    .expect("no mixed terms")
}

/// `W = 64 v^N / (fig8hopf denominator)`.
pub fn fig8hopf_paper(r: u32, n: u32) -> HopfionSpec {
    let mut spec = HopfionSpec::new(fig8hopf_paper_denominator(r), n);
    spec.numerator_constant = Rational::from_integer(64.into());
    spec
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!("trefoil".parse::<Preset>().is_err());
    }

    #[test]
    fn hopf_denominator_at_r2() {
        let f = fig8hopf_paper_denominator(2);
        assert_eq!(f.deg_u(), 3);
        assert_eq!(f.terms().len(), 8);
        assert_eq!(fig8hopf_paper(2, 2).predicted_charge(), 6);
    }
}
