use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::BraidError;
use crate::algebra::rational::{int, rat, rational_from_json, rational_to_json, Rational};

/// Parameters of a lemniscate braid `L(s, r, ℓ)`, optionally rotated `n_rot` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemniscateSpec {
    pub s: u32,
    pub r: u32,
    pub l: u32,
    pub a: Rational,
    /// Its sign selects the chirality.
    pub b: Rational,
    pub lambda: Rational,
    pub n_rot: i64,
}

/// Default overall scale: 1 for one or two lobes, 1/2 for three.
/// `None` for four or more lobes, where the scale has to be searched for.
pub fn default_lambda(l: u32) -> Option<Rational> {
    match l {
        0..=2 => Some(int(1)),
        3 => Some(rat(1, 2)),
        _ => None,
    }
}

impl LemniscateSpec {
    /// `a = b = 1`; λ from [`default_lambda`], falling back to 1/2 when there is no default.
    pub fn new(s: u32, r: u32, l: u32) -> Result<Self, BraidError> {
        let lambda = default_lambda(l).unwrap_or_else(|| rat(1, 2));
        Self::with_params(s, r, l, int(1), int(1), lambda)
    }

    pub fn with_params(s: u32, r: u32, l: u32, a: Rational, b: Rational, lambda: Rational) -> Result<Self, BraidError> {
        let spec = Self { s, r, l, a, b, lambda, n_rot: 0 };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), BraidError> {
        let fail = |msg: String| Err(BraidError::InvalidSpec(msg));
        if self.r == 0 || self.l == 0 {
            return fail(format!("r and l must be positive (r={}, l={})", self.r, self.l));
        }
        if self.s <= self.l {
            return fail(format!("need s > l, got s={} l={}", self.s, self.l));
        }
        if self.s.gcd(&self.l) != 1 {
            return fail(format!("gcd(s, l) = {} must be 1", self.s.gcd(&self.l)));
        }
        if !self.a.is_positive() {
            return fail(format!("a must be positive, got {}", self.a));
        }
        if self.b.is_zero() {
            return fail("b must be nonzero".into());
        }
        if !self.lambda.is_positive() {
            return fail(format!("lambda must be positive, got {}", self.lambda));
        }
        Ok(())
    }

    pub fn with_lambda(&self, lambda: Rational) -> Self {
        Self { lambda, ..self.clone() }
    }

    pub fn with_rotation(&self, n_rot: i64) -> Self {
        Self { n_rot, ..self.clone() }
    }

    /// Same spec with `b` negated.
    pub fn mirror(&self) -> Self {
        Self { b: -self.b.clone(), ..self.clone() }
    }

    /// Number of closure components, `gcd(s, r)`.
    pub fn components(&self) -> u32 {
        self.s.gcd(&self.r)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "s": self.s,
            "r": self.r,
            "l": self.l,
            "a": rational_to_json(&self.a),
            "b": rational_to_json(&self.b),
            "lambda": rational_to_json(&self.lambda),
            "n_rot": self.n_rot,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, BraidError> {
        let bad = |k: &str| BraidError::InvalidSpec(format!("spec JSON: missing or invalid \"{k}\""));
        let uint = |k: &str| v.get(k).and_then(Value::as_u64).and_then(|x| u32::try_from(x).ok()).ok_or_else(|| bad(k));
        let ratio = |k: &str| v.get(k).and_then(rational_from_json).ok_or_else(|| bad(k));
        let spec = Self {
            s: uint("s")?,
            r: uint("r")?,
            l: uint("l")?,
            a: ratio("a")?,
            b: ratio("b")?,
            lambda: ratio("lambda")?,
            n_rot: match v.get("n_rot") {
                None => 0,
                Some(n) => n.as_i64().ok_or_else(|| bad("n_rot"))?,
            },
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(LemniscateSpec::new(3, 2, 2).is_ok());
        assert!(LemniscateSpec::new(4, 2, 2).is_err());
        assert!(LemniscateSpec::new(2, 2, 2).is_err());
        assert!(LemniscateSpec::new(3, 0, 1).is_err());
        assert!(LemniscateSpec::with_params(3, 2, 2, int(-1), int(1), int(1)).is_err());
        assert!(LemniscateSpec::with_params(3, 2, 2, int(1), int(1), int(0)).is_err());
    }

    #[test]
    fn defaults() {
        assert_eq!(LemniscateSpec::new(3, 2, 2).unwrap().lambda, int(1));
        assert_eq!(LemniscateSpec::new(4, 2, 3).unwrap().lambda, rat(1, 2));
        assert_eq!(default_lambda(4), None);
        assert_eq!(LemniscateSpec::new(6, 3, 1).unwrap().components(), 3);
    }

    #[test]
    fn json_round_trip() {
        let spec = LemniscateSpec::with_params(5, 3, 2, rat(1, 2), rat(-3, 4), rat(2, 3)).unwrap().with_rotation(-1);
        let j = spec.to_json();
        assert_eq!(j["a"], json!([1, 2]));
        assert_eq!(LemniscateSpec::from_json(&j).unwrap(), spec);
    }
}
