//! Strands as finite Fourier sums `Z(h) = Σ c_k e^{i(ω_k h + 2π φ_k)}`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::spec::LemniscateSpec;
use super::BraidError;
use crate::algebra::cyclotomic::CyclotomicElement;
use crate::algebra::gaussian::GaussianRational;
use crate::algebra::laurent::ExpLaurentPoly;
use crate::algebra::rational::{int, to_f64, Rational};

/// `coeff · e^{i(freq·h + 2π·phase)}`; `phase` is a fraction of a full turn in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpTerm {
    pub coeff: GaussianRational,
    pub freq: Rational,
    pub phase: Rational,
}

impl ExpTerm {
    pub fn new(coeff: GaussianRational, freq: Rational, phase: Rational) -> Self {
        Self { coeff, freq, phase: wrap_turn(&phase) }
    }

    pub fn eval(&self, h: f64) -> Complex64 {
        let angle = to_f64(&self.freq) * h + TAU * to_f64(&self.phase);
        self.coeff.to_complex() * Complex64::from_polar(1.0, angle)
    }
}

fn wrap_turn(x: &Rational) -> Rational {
    x - x.floor()
}

/// One braid strand `h ↦ Z(h) ∈ ℂ`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TrigStrand {
    terms: Vec<ExpTerm>,
}

impl TrigStrand {
    /// Merges terms sharing frequency and phase and drops zeros.
    pub fn new(terms: impl IntoIterator<Item = ExpTerm>) -> Self {
        let mut merged: BTreeMap<(Rational, Rational), GaussianRational> = BTreeMap::new();
        for t in terms {
            let t = ExpTerm::new(t.coeff, t.freq, t.phase);
            *merged.entry((t.freq, t.phase)).or_insert_with(GaussianRational::zero) += &t.coeff;
        }
        let terms = merged.into_iter().filter(|(_, c)| !c.is_zero()).map(|((freq, phase), coeff)| ExpTerm { coeff, freq, phase }).collect();
        Self { terms }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · e^{i·freq·h}`.
    pub fn single(coeff: GaussianRational, freq: Rational) -> Self {
        Self::new([ExpTerm::new(coeff, freq, Rational::zero())])
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn eval(&self, h: f64) -> Complex64 {
        self.terms.iter().map(|t| t.eval(h)).sum()
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        Self::new(self.terms.iter().map(|t| ExpTerm { coeff: t.coeff.scale(k), ..t.clone() }))
    }

    pub fn negated(&self) -> Self {
        self.scaled(&int(-1))
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self::new(self.terms.iter().chain(&other.terms).cloned())
    }

    /// `h ↦ Z(h + 2π·turns)`.
    pub fn shifted(&self, turns: &Rational) -> Self {
        Self::new(self.terms.iter().map(|t| ExpTerm::new(t.coeff.clone(), t.freq.clone(), &t.phase + &t.freq * turns)))
    }

    /// `h ↦ e^{inh} Z(h)`.
    pub fn rotated(&self, n: i64) -> Self {
        Self::new(self.terms.iter().map(|t| ExpTerm { freq: &t.freq + int(n), ..t.clone() }))
    }

    /// Smallest `D` with every frequency in `ℤ/D`.
    pub fn freq_denominator(&self) -> u64 {
        self.terms.iter().fold(1u64, |d, t| d.lcm(&t.freq.denom().to_u64().expect("frequency denominator")))
    }

    /// Smallest `N` divisible by 4 with every phase in `ℤ/N`.
    pub fn phase_order(&self) -> u64 {
        self.terms.iter().fold(4u64, |n, t| n.lcm(&t.phase.denom().to_u64().expect("phase denominator")))
    }

    /// Exact form in `e^{ih/denom}` over `ℚ(ζ_order)`; both must be multiples of
    /// [`Self::freq_denominator`] and [`Self::phase_order`].
    pub fn to_laurent(&self, denom: u64, order: u64) -> ExpLaurentPoly {
        let mut out = ExpLaurentPoly::zero(denom, order);
        for t in &self.terms {
            let m = (&t.freq * int(denom as i64)).to_integer().to_i64().expect("exponent");
            let k = (&t.phase * int(order as i64)).to_integer().to_i64().expect("phase index");
            let c = CyclotomicElement::from_gaussian(order, &t.coeff)
                .expect("order divisible by 4")
                .checked_mul(&CyclotomicElement::zeta_pow(order, k))
                .expect("same order");
            out = out.add(&ExpLaurentPoly::monomial(denom, m, c)).expect("compatible");
        }
        out
    }
}

pub fn freq_denominator(strands: &[TrigStrand]) -> u64 {
    strands.iter().fold(1, |d, s| d.lcm(&s.freq_denominator()))
}

pub fn phase_order(strands: &[TrigStrand]) -> u64 {
    strands.iter().fold(4, |n, s| n.lcm(&s.phase_order()))
}

/// The strands of `L(s, r, ℓ)` scaled by λ (rotation is ignored; see [`rotating_strands`]):
/// `X_j = a cos((rh + 2π(j-1))/s)`, `Y_j = (b/ℓ) sin(ℓ(rh + 2π(j-1))/s)`.
pub fn lemniscate_strands(spec: &LemniscateSpec) -> Vec<TrigStrand> {
    let s = spec.s as i64;
    let l = spec.l as i64;
    let half_a = &spec.a / int(2);
    let half_b = &spec.b / int(2 * l);
    let base = Rational::new(spec.r.into(), spec.s.into());
    (0..s)
        .map(|j| {
            let phase = Rational::new(j.into(), s.into());
            let lobe_freq = &base * int(l);
            let lobe_phase = &phase * int(l);
            // cos θ = (e^{iθ} + e^{-iθ})/2, i·sin θ = (e^{iθ} - e^{-iθ})/2
            TrigStrand::new([
                ExpTerm::new(half_a.clone().into(), base.clone(), phase.clone()),
                ExpTerm::new(half_a.clone().into(), -base.clone(), -phase.clone()),
                ExpTerm::new(half_b.clone().into(), lobe_freq.clone(), lobe_phase.clone()),
                ExpTerm::new((-half_b.clone()).into(), -lobe_freq, -lobe_phase),
            ])
            .scaled(&spec.lambda)
        })
        .collect()
}

/// Lemniscate strands multiplied by `e^{inh}`: the figure turns `n` times as `h` runs over `[0, 2π]`.
pub fn rotating_strands(spec: &LemniscateSpec, n: i64) -> Vec<TrigStrand> {
    lemniscate_strands(spec).into_iter().map(|z| z.rotated(n)).collect()
}

/// Strands of a spec including its own rotation count.
pub fn spec_strands(spec: &LemniscateSpec) -> Vec<TrigStrand> {
    rotating_strands(spec, spec.n_rot)
}

/// Minimum pairwise distance between strands over `samples` uniform heights in `[0, 2π)`.
pub fn min_pairwise_distance(strands: &[TrigStrand], samples: usize) -> f64 {
    let mut best = f64::INFINITY;
    let mut values = vec![Complex64::zero(); strands.len()];
    for k in 0..samples {
        let h = TAU * k as f64 / samples as f64;
        for (v, z) in values.iter_mut().zip(strands) {
            *v = z.eval(h);
        }
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                best = best.min((values[i] - values[j]).norm());
            }
        }
    }
    best
}

pub const COLLISION_SAMPLES: usize = 8192;
pub const COLLISION_TOLERANCE: f64 = 1e-6;

/// Replaces each of the `outer_count` strands generated by `outer` (the template
/// evaluated at `h + 2π(j-1)`) by the cluster `outer + epicycle_k`, carried along
/// by the same shift.
pub fn cable_strands(outer: &TrigStrand, outer_count: u32, epicycle: &[TrigStrand]) -> Result<Vec<TrigStrand>, BraidError> {
    let mut strands = Vec::with_capacity(outer_count as usize * epicycle.len());
    for j in 0..outer_count {
        let turns = int(j as i64);
        for e in epicycle {
            strands.push(outer.plus(e).shifted(&turns));
        }
    }
    let d = min_pairwise_distance(&strands, COLLISION_SAMPLES);
    if d < COLLISION_TOLERANCE {
        return Err(BraidError::StrandCollision { distance: d });
    }
    Ok(strands)
}
