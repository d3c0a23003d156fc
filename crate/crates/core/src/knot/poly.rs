use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::rational::{bigint_from_json, bigint_to_json};

/// Integer Laurent polynomial `Σ c_k t^k`, stored densely from `min_exp`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntLaurentPoly {
    min_exp: i64,
    /// Never has zero first or last entries; empty means zero.
    coeffs: Vec<BigInt>,
}

impl IntLaurentPoly {
    pub fn new(min_exp: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { min_exp, coeffs };
        p.trim();
        p
    }

    pub fn from_i64(min_exp: i64, coeffs: &[i64]) -> Self {
        Self::new(min_exp, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { min_exp: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c t^k`.
    pub fn monomial(k: i64, c: i64) -> Self {
        Self::from_i64(k, &[c])
    }

    /// `1 - t^{±1}` style helpers are built from these.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exp += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn max_exp(&self) -> i64 {
        self.min_exp + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: i64) -> BigInt {
        let idx = k - self.min_exp;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Difference between highest and lowest exponent; 0 for zero and monomials.
    pub fn span(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.coeffs.len() as i64 - 1
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { min_exp: self.min_exp + k, coeffs: self.coeffs.clone() }
    }

    pub fn neg(&self) -> Self {
        Self { min_exp: self.min_exp, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(other.min_exp);
        let hi = self.max_exp().max(other.max_exp());
        let coeffs = (lo..=hi).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::new(lo, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(self.min_exp + other.min_exp, coeffs)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `self / divisor` in `ℤ[t, t⁻¹]`, or `None` when the division is not exact.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem: Vec<BigInt> = self.coeffs.clone();
        let d = &divisor.coeffs;
        let lead = d.last().unwrap();
        if rem.len() < d.len() {
            return None;
        }
        let qlen = rem.len() - d.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + d.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dj) in d.iter().enumerate() {
                rem[i + j] -= &q * dj;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.min_exp - divisor.min_exp, quot))
    }

    /// Value at `t = 1`.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Equal up to a unit `±t^k` of `ℤ[t, t⁻¹]`.
    pub fn equals_up_to_unit(&self, other: &Self) -> bool {
        let a = self.shift(-self.min_exp);
        let b = other.shift(-other.min_exp);
        a == b || a == b.neg()
    }

    /// `Δ(t) = Δ(t⁻¹)`.
    pub fn is_symmetric(&self) -> bool {
        self.min_exp == -self.max_exp() && self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// `p(t⁻¹)`.
    pub fn reflect(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self::new(-self.max_exp(), self.coeffs.iter().rev().cloned().collect())
    }

    /// Coefficients reduced into `[0, p)`, as a polynomial with trimmed zeros.
    pub fn mod_p(&self, p: u64) -> Self {
        let p = BigInt::from(p);
        Self::new(self.min_exp, self.coeffs.iter().map(|c| c.mod_floor(&p)).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "minExp": self.min_exp,
            "coeffs": self.coeffs.iter().map(bigint_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let min_exp = v.get("minExp")?.as_i64()?;
        let coeffs = v.get("coeffs")?.as_array()?.iter().map(bigint_from_json).collect::<Option<Vec<_>>>()?;
        Some(Self::new(min_exp, coeffs))
    }
}

impl fmt::Debug for IntLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntLaurentPoly({self})")
    }
}

impl fmt::Display for IntLaurentPoly {
    /// `t^-1 - 3 + t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.min_exp + i as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}
