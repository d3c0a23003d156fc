//! Exact semiholomorphic polynomials `f(u, v, v̄)` over ℚ(i).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::gaussian::{gaussian_parts_to_json, GaussianRational};
use super::rational::{lcm_of_denominators, rational_from_json, Rational};
use super::AlgebraError;

/// `(e_u, e_v, e_v̄)`.
pub type Exponents = (u32, u32, u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiholoPolynomial {
    terms: BTreeMap<Exponents, GaussianRational>,
}

impl SemiholoPolynomial {
    /// Drops zero coefficients; rejects terms carrying both `v` and `v̄`.
    pub fn from_terms(terms: BTreeMap<Exponents, GaussianRational>) -> Result<Self, AlgebraError> {
        let mut kept = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            if e.1 > 0 && e.2 > 0 {
                return Err(AlgebraError::MixedTerm { eu: e.0, ev: e.1, evb: e.2 });
            }
            kept.insert(e, c);
        }
        Ok(Self { terms: kept })
    }

    /// Convenience constructor from `(eu, ev, evb, re, im)` integer tuples.
    pub fn from_int_terms(terms: &[(u32, u32, u32, i64, i64)]) -> Result<Self, AlgebraError> {
        let mut map: BTreeMap<Exponents, GaussianRational> = BTreeMap::new();
        for &(eu, ev, evb, re, im) in terms {
            *map.entry((eu, ev, evb)).or_insert_with(GaussianRational::zero) += &GaussianRational::from_ints(re, im);
        }
        Self::from_terms(map)
    }

    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, GaussianRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_u(&self) -> u32 {
        self.terms.keys().map(|e| e.0).max().unwrap_or(0)
    }

    /// Largest `e_v + e_v̄` over all terms.
    pub fn deg_v(&self) -> u32 {
        self.terms.keys().map(|e| e.1 + e.2).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.0 + e.1 + e.2).max().unwrap_or(0)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c.scale(k))).collect() }
    }

    /// Multiplies by the positive LCM of all coefficient denominators.
    pub fn integerize(&self) -> (Self, BigInt) {
        let clearing = lcm_of_denominators(self.terms.values().flat_map(|c| [&c.re, &c.im]));
        let k = Rational::from_integer(clearing.clone());
        (self.scale(&k), clearing)
    }

    /// `λ^s f(u/λ, v, v̄)` with `s = deg_u f`: the coefficient of `u^k` gains `λ^{s-k}`.
    pub fn stretch(&self, lambda: &Rational) -> Self {
        let s = self.deg_u();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (*e, c.scale(&num_traits::pow(lambda.clone(), (s - e.0) as usize))))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self { terms }
    }

    /// The positive rational `k` with `self = k · other`, if one exists.
    pub fn positive_ratio_to(&self, other: &Self) -> Option<Rational> {
        if self.terms.len() != other.terms.len() || self.is_zero() {
            return None;
        }
        let mut ratio: Option<Rational> = None;
        for (e, c) in &self.terms {
            let d = other.terms.get(e)?;
            let q = c.checked_div(d).ok()?;
            if !q.im.is_zero() || !q.re.is_positive() {
                return None;
            }
            match &ratio {
                None => ratio = Some(q.re),
                Some(r) if *r == q.re => {}
                Some(_) => return None,
            }
        }
        ratio
    }

    /// Swaps `v` and `v̄` and conjugates coefficients, i.e. `(f(ū, v, v̄))‾` read as
    /// a polynomial in `u`; used to compare mirror constructions.
    pub fn conjugate(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| ((e.0, e.2, e.1), c.conj())).collect() }
    }

    /// Records sorted by `(eu, ev, evb)` descending.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .rev()
                .map(|(e, c)| {
                    let (re, im) = gaussian_parts_to_json(c);
                    json!({"eu": e.0, "ev": e.1, "evb": e.2, "re": re, "im": im})
                })
                .collect(),
        )
    }

    pub fn from_json(value: &Value) -> Result<Self, AlgebraError> {
        let bad = |what: &str| AlgebraError::Parse(format!("semiholomorphic polynomial JSON: {what}"));
        let records = value.as_array().ok_or_else(|| bad("expected a list of terms"))?;
        let mut map: BTreeMap<Exponents, GaussianRational> = BTreeMap::new();
        for rec in records {
            let exp = |key: &str| {
                rec.get(key)
                    .and_then(Value::as_u64)
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| bad(&format!("missing or invalid \"{key}\"")))
            };
            let e = (exp("eu")?, exp("ev")?, exp("evb")?);
            let part = |key: &str| match rec.get(key) {
                None => Ok(Rational::zero()),
                Some(v) => rational_from_json(v).ok_or_else(|| bad(&format!("invalid \"{key}\""))),
            };
            let c = GaussianRational::new(part("re")?, part("im")?);
            if map.insert(e, c).is_some() {
                return Err(bad("duplicate exponent triple"));
            }
        }
        Self::from_terms(map)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &Exponents) -> fmt::Result {
    for (name, k) in [("u", e.0), ("v", e.1), ("vb", e.2)] {
        match k {
            0 => {}
            1 => write!(f, "{name}")?,
            _ => write!(f, "{name}^{k}")?,
        }
    }
    Ok(())
}

impl fmt::Display for SemiholoPolynomial {
    /// Terms in descending exponent order, e.g. `64u^3 - 36u - 24uv^2 + 24uvb^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let constant = *e == (0, 0, 0);
            if c.im.is_zero() {
                let neg = c.re.is_negative();
                let mag = c.re.abs();
                match (idx, neg) {
                    (0, true) => write!(f, "-")?,
                    (0, false) => {}
                    (_, true) => write!(f, " - ")?,
                    (_, false) => write!(f, " + ")?,
                }
                if constant || !mag.is_one() {
                    write!(f, "{mag}")?;
                }
            } else {
                if idx > 0 {
                    write!(f, " + ")?;
                }
                write!(f, "({c})")?;
            }
            write_monomial(f, e)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn fig8() -> SemiholoPolynomial {
        SemiholoPolynomial::from_int_terms(&[
            (3, 0, 0, 64, 0),
            (1, 0, 0, -36, 0),
            (1, 2, 0, -24, 0),
            (1, 0, 2, 24, 0),
            (0, 2, 0, -14, 0),
            (0, 0, 2, -14, 0),
            (0, 4, 0, -1, 0),
            (0, 0, 4, 1, 0),
        ])
        .unwrap()
    }

    #[test]
    fn mixed_terms_rejected() {
        let r = SemiholoPolynomial::from_int_terms(&[(0, 1, 1, 1, 0)]);
        assert!(matches!(r, Err(AlgebraError::MixedTerm { .. })));
    }

    #[test]
    fn degrees() {
        let f = fig8();
        assert_eq!(f.deg_u(), 3);
        assert_eq!(f.deg_v(), 4);
        assert_eq!(f.total_degree(), 4);
    }

    #[test]
    fn integerize_clears_denominators() {
        let mut map = BTreeMap::new();
        map.insert((3, 0, 0), GaussianRational::from_ints(1, 0));
        map.insert((0, 0, 0), GaussianRational::from_rational(rat(-3, 4)));
        let f = SemiholoPolynomial::from_terms(map).unwrap();
        let (g, k) = f.integerize();
        assert_eq!(k, BigInt::from(4));
        assert_eq!(g, SemiholoPolynomial::from_int_terms(&[(3, 0, 0, 4, 0), (0, 0, 0, -3, 0)]).unwrap());
        let (h, one) = g.integerize();
        assert_eq!(one, BigInt::from(1));
        assert_eq!(h, g);
    }

    #[test]
    fn json_round_trip_and_order() {
        let f = fig8();
        let j = f.to_json();
        let first = &j.as_array().unwrap()[0];
        assert_eq!(first["eu"], 3);
        assert_eq!(first["re"], json!([64, 1]));
        let last = j.as_array().unwrap().last().unwrap();
        assert_eq!((last["eu"].as_u64(), last["ev"].as_u64(), last["evb"].as_u64()), (Some(0), Some(0), Some(2)));
        assert_eq!(SemiholoPolynomial::from_json(&j).unwrap(), f);
    }

    #[test]
    fn positive_ratio() {
        let f = fig8();
        let g = f.scale(&rat(1, 64));
        assert_eq!(f.positive_ratio_to(&g), Some(int(64)));
        assert_eq!(f.positive_ratio_to(&f.scale(&int(-1))), None);
        assert_eq!(f.positive_ratio_to(&SemiholoPolynomial::from_int_terms(&[(3, 0, 0, 1, 0)]).unwrap()), None);
    }

    #[test]
    fn stretch_scales_lower_u_powers() {
        let f = SemiholoPolynomial::from_int_terms(&[(2, 0, 0, 1, 0), (0, 3, 0, -1, 0)]).unwrap();
        let g = f.stretch(&rat(1, 2));
        assert_eq!(g.terms()[&(2, 0, 0)], GaussianRational::from_ints(1, 0));
        assert_eq!(g.terms()[&(0, 3, 0)], GaussianRational::from_rational(rat(-1, 4)));
    }

    #[test]
    fn display() {
        let f = SemiholoPolynomial::from_int_terms(&[(2, 0, 0, 1, 0), (0, 3, 0, -1, 0), (0, 0, 0, 2, 0)]).unwrap();
        assert_eq!(f.to_string(), "u^2 - v^3 + 2");
    }
}
