//! Helpers around arbitrary-precision rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use super::AlgebraError;

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    // Ratio::to_f64 handles large numerators/denominators without overflow.
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Parses `p/q`, a plain integer, or a terminating decimal such as `0.125`.
pub fn parse_rational(text: &str) -> Result<Rational, AlgebraError> {
    let t = text.trim();
    let bad = || AlgebraError::Parse(text.to_string());
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit()) || frac.is_empty() && whole_digits.is_empty() {
            return Err(bad());
        }
        let w: BigInt = if whole_digits.is_empty() { BigInt::zero() } else { whole_digits.parse().map_err(|_| bad())? };
        let f: BigInt = if frac.is_empty() { BigInt::zero() } else { frac.parse().map_err(|_| bad())? };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mut value = Rational::new(w * &scale + f, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn sign(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) fn bigint_to_json(b: &BigInt) -> Value {
    match b.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(b.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// `[num, den]` pair.
pub(crate) fn rational_to_json(r: &Rational) -> Value {
    Value::Array(vec![bigint_to_json(r.numer()), bigint_to_json(r.denom())])
}

pub(crate) fn rational_from_json(v: &Value) -> Option<Rational> {
    let pair = v.as_array()?;
    if pair.len() != 2 {
        return None;
    }
    let n = bigint_from_json(&pair[0])?;
    let d = bigint_from_json(&pair[1])?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Integer if the denominator is one, otherwise `[num, den]`.
pub(crate) fn rational_to_json_compact(r: &Rational) -> Value {
    if r.is_integer() {
        bigint_to_json(r.numer())
    } else {
        rational_to_json(r)
    }
}
