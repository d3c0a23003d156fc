//! Exact arithmetic in the cyclotomic field ℚ(ζ_N).
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` and always
//! reduced modulo the N-th cyclotomic polynomial Φ_N, so equality is plain
//! coefficient equality.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::rational::{self, Rational};
use super::AlgebraError;

/// The modulus data for one order N.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u64,
    /// Coefficients of Φ_N, lowest degree first. Monic.
    modulus: Vec<i64>,
}

impl CyclotomicField {
    pub fn order(&self) -> u64 {
        self.order
    }

    /// φ(N), the dimension over ℚ.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// Reduces a dense rational polynomial (lowest degree first) mod Φ_N.
    pub fn reduce(&self, mut raw: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        for k in (d..raw.len()).rev() {
            if raw[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut raw[k], Rational::zero());
            for (i, &m) in self.modulus[..d].iter().enumerate() {
                if m != 0 {
                    raw[k - d + i] -= &c * Rational::from_integer(BigInt::from(m));
                }
            }
        }
        raw.resize(d, Rational::zero());
        raw
    }

    /// Integer version of [`reduce`](Self::reduce); Φ_N is monic so integrality is kept.
    pub fn reduce_integer(&self, mut raw: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree();
        for k in (d..raw.len()).rev() {
            if raw[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut raw[k]);
            for (i, &m) in self.modulus[..d].iter().enumerate() {
                if m != 0 {
                    raw[k - d + i] -= &c * m;
                }
            }
        }
        raw.resize(d, BigInt::zero());
        raw
    }
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // Both monic with integer coefficients; the quotient is integral.
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        q[k] = c;
        if c != 0 {
            for (i, &m) in den.iter().enumerate() {
                rem[k + i] -= c * m;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

/// Coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &field(d).modulus);
        }
    }
    p
}

/// Shared, cached modulus data for order `n`.
pub fn field(n: u64) -> Arc<CyclotomicField> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&n) {
        return f.clone();
    }
    // Computed outside the lock: cyclotomic_polynomial recurses into field().
    let modulus = if n == 1 { vec![-1, 1] } else { cyclotomic_polynomial(n) };
    let f = Arc::new(CyclotomicField { order: n, modulus });
    cache.lock().unwrap().entry(n).or_insert(f).clone()
}

/// An element of ℚ(ζ_N) in the reduced power basis.
#[derive(Clone)]
pub struct CyclotomicElement {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for CyclotomicElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicElement {}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo{}[", self.field.order)?;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}·ζ^{k}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "]")
    }
}

impl CyclotomicElement {
    pub fn zero(order: u64) -> Self {
        let field = field(order);
        let d = field.degree();
        Self { field, coeffs: vec![Rational::zero(); d] }
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u64, r: Rational) -> Self {
        let mut e = Self::zero(order);
        e.coeffs[0] = r;
        e
    }

    /// Builds an element from an arbitrary-length polynomial in ζ.
    pub fn from_poly(order: u64, raw: Vec<Rational>) -> Self {
        let field = field(order);
        let coeffs = field.reduce(raw);
        Self { field, coeffs }
    }

    /// `numerators / denominator` where `numerators` is a polynomial in ζ of any length.
    pub fn from_integer_poly(order: u64, raw: Vec<BigInt>, denominator: &BigInt) -> Self {
        let field = field(order);
        let reduced = field.reduce_integer(raw);
        let coeffs = reduced.into_iter().map(|c| Rational::new(c, denominator.clone())).collect();
        Self { field, coeffs }
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_pow(order: u64, k: i64) -> Self {
        let k = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![Rational::zero(); k + 1];
        raw[k] = Rational::one();
        Self::from_poly(order, raw)
    }

    /// Embeds `p + q·i` using i = ζ_N^{N/4}.
    pub fn from_gaussian(order: u64, g: &GaussianRational) -> Result<Self, AlgebraError> {
        if !order.is_multiple_of(4) {
            return Err(AlgebraError::OrderLacksI(order));
        }
        let i = Self::zeta_pow(order, (order / 4) as i64);
        Ok(Self::from_rational(order, g.re.clone()).add_same(&i.scale(&g.im)))
    }

    pub fn order(&self) -> u64 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.order() != other.order() {
            return Err(AlgebraError::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    fn add_same(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self { field: self.field.clone(), coeffs }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_order(other)?;
        Ok(self.add_same(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { field: self.field.clone(), coeffs })
    }

    pub fn neg(&self) -> Self {
        Self { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_order(other)?;
        let d = self.coeffs.len();
        let mut raw = vec![Rational::zero(); (2 * d).saturating_sub(1).max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Ok(Self { field: self.field.clone(), coeffs: self.field.reduce(raw) })
    }

    /// Re-expresses this element in ℚ(ζ_M) for a multiple M of the current order.
    pub fn promote(&self, new_order: u64) -> Result<Self, AlgebraError> {
        let n = self.order();
        if !new_order.is_multiple_of(n) {
            return Err(AlgebraError::InvalidPromotion { from: n, to: new_order });
        }
        if new_order == n {
            return Ok(self.clone());
        }
        let step = (new_order / n) as usize;
        let mut raw = vec![Rational::zero(); step * self.coeffs.len().max(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[k * step] = c.clone();
        }
        Ok(Self::from_poly(new_order, raw))
    }

    /// Numeric value at ζ_N = e^{2πi/N}.
    pub fn to_complex(&self) -> Complex64 {
        let theta = 2.0 * std::f64::consts::PI / self.order() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| Complex64::from_polar(rational::to_f64(c), theta * k as f64))
            .sum()
    }

    /// Returns `p + q·i` when this element lies in ℚ(i).
    pub fn to_gaussian(&self) -> Result<GaussianRational, AlgebraError> {
        let n = self.order();
        if !n.is_multiple_of(4) {
            return Err(AlgebraError::OrderLacksI(n));
        }
        let i = Self::zeta_pow(n, (n / 4) as i64);
        // 1 and i are independent for 4 | N, so i has a nonzero coordinate outside ζ^0.
        let (k, ik) = i.coeffs.iter().enumerate().skip(1).find(|(_, c)| !c.is_zero()).expect("i is not rational");
        let q = &self.coeffs[k] / ik;
        let p = &self.coeffs[0] - &q * &i.coeffs[0];
        let candidate = Self::from_rational(n, p.clone()).add_same(&i.scale(&q));
        if candidate == *self {
            Ok(GaussianRational::new(p, q))
        } else {
            Err(AlgebraError::NotGaussian(format!("{self:?}")))
        }
    }
}

/// Product in ℚ(ζ_N); both operands must share the order.
pub fn cyclo_mul(x: &CyclotomicElement, y: &CyclotomicElement) -> Result<CyclotomicElement, AlgebraError> {
    x.checked_mul(y)
}

/// Projection of an element of ℚ(ζ_N) onto ℚ(i), failing when it is not there.
pub fn cyclo_to_gaussian(x: &CyclotomicElement) -> Result<GaussianRational, AlgebraError> {
    x.to_gaussian()
}
