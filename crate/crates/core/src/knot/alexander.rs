use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::burau::burau_of_word;
use super::poly::IntLaurentPoly;
use super::KnotError;
use crate::braid::{braid_permutation, predict::prime_power, BraidWord};

/// `1 + t + … + t^{s-1}`.
pub fn repunit(s: u32) -> IntLaurentPoly {
    IntLaurentPoly::from_i64(0, &vec![1; s as usize])
}

/// Symmetric representative with `Δ(1) = 1`, if `p(1) = ±1` and the span is even.
fn normalize(p: &IntLaurentPoly) -> Option<IntLaurentPoly> {
    let v = p.at_one();
    if v.abs() != BigInt::one() || p.span() % 2 != 0 {
        return None;
    }
    let centred = p.shift(-(p.min_exp() + p.span() / 2));
    Some(if v.is_negative() { centred.neg() } else { centred })
}

/// Alexander polynomial of a braid closure that is a knot: determinant of the
/// `(s-1)×(s-1)` leading minor of `Burau(w) - I`, normalized to `Δ(t) = Δ(t⁻¹)`, `Δ(1) = 1`.
pub fn alexander_from_braid(word: &BraidWord) -> Result<IntLaurentPoly, KnotError> {
    let perm = braid_permutation(word);
    if perm.cycles != 1 {
        return Err(KnotError::MultiComponent(perm.cycles));
    }
    if word.strands() == 1 {
        return Ok(IntLaurentPoly::one());
    }
    let minor = burau_of_word(word).minus_identity().drop_last().determinant();
    if let Some(d) = normalize(&minor) {
        return Ok(d);
    }
    // A minor that still carries the [s]_t factor of the unreduced representation.
    minor.exact_div(&repunit(word.strands())).and_then(|q| normalize(&q)).ok_or_else(|| KnotError::Normalization(minor.to_string()))
}

/// `Σ_{k=-n}^{n} (-1)^{n+k} (2(n-|k|)+1) t^k`. Its value at `t = 1` is `(-1)^n`, so for odd
/// `n` it is the negative of the `Δ(1) = 1` representative.
pub fn theorem2_alexander(n: u32) -> IntLaurentPoly {
    let n = n as i64;
    let coeffs: Vec<i64> = (-n..=n)
        .map(|k| {
            let sign = if (n + k) % 2 == 0 { 1 } else { -1 };
            sign * (2 * (n - k.abs()) + 1)
        })
        .collect();
    IntLaurentPoly::from_i64(-n, &coeffs)
}

/// `Δ ≡ ±t^j (1 + t + … + t^{s-1})^{r-1} (mod p)` where `r = p^k`.
pub fn murasugi_mod_check(delta: &IntLaurentPoly, s: u32, r: u32) -> Result<bool, KnotError> {
    let (p, _) = prime_power(r).ok_or(KnotError::NotPrimePower(r))?;
    let p = p as u64;
    let target = repunit(s).pow(r - 1).mod_p(p);
    let target = target.shift(-target.min_exp());
    let ours = delta.mod_p(p);
    let ours = ours.shift(-ours.min_exp());
    Ok(ours == target || ours.neg().mod_p(p) == target)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub span: i64,
    /// `span(Δ) / 2`.
    pub genus_lower: i64,
    /// `(s-1)(r-1) / 2`.
    pub genus_upper: i64,
    pub prime_power: bool,
    /// Bounds are ordered, and coincide when `r` is a prime power.
    pub consistent: bool,
}

pub fn genus_degree_check(delta: &IntLaurentPoly, s: u32, r: u32) -> GenusReport {
    let span = delta.span();
    let lower = span / 2;
    let upper = (s as i64 - 1) * (r as i64 - 1) / 2;
    let pp = prime_power(r).is_some();
    GenusReport {
        span,
        genus_lower: lower,
        genus_upper: upper,
        prime_power: pp,
        consistent: span % 2 == 0 && lower <= upper && (!pp || lower == upper),
    }
}
