//! Laurent polynomials in the braid-height exponential e^{ih/D} with
//! cyclotomic coefficients, and polynomials in `u` over them.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;

use super::cyclotomic::CyclotomicElement;
use super::gaussian::GaussianRational;
use super::rational::Rational;
use super::semiholo::{Exponents, SemiholoPolynomial};
use super::AlgebraError;

/// `Σ_m c_m · e^{i m h / D}` with every `c_m ∈ ℚ(ζ_N)` for one shared N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpLaurentPoly {
    denom: u64,
    order: u64,
    terms: BTreeMap<i64, CyclotomicElement>,
}

impl ExpLaurentPoly {
    pub fn zero(denom: u64, order: u64) -> Self {
        assert!(denom >= 1 && order >= 1);
        Self { denom, order, terms: BTreeMap::new() }
    }

    pub fn constant(c: CyclotomicElement) -> Self {
        Self::monomial(1, 0, c)
    }

    pub fn one(order: u64) -> Self {
        Self::constant(CyclotomicElement::one(order))
    }

    /// `c · e^{i exponent h / denom}`.
    pub fn monomial(denom: u64, exponent: i64, c: CyclotomicElement) -> Self {
        let mut p = Self::zero(denom, c.order());
        if !c.is_zero() {
            p.terms.insert(exponent, c);
        }
        p
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<i64, CyclotomicElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same polynomial written over the finer denominator `new_denom` (a multiple of D).
    pub fn rescale(&self, new_denom: u64) -> Self {
        assert!(new_denom.is_multiple_of(self.denom), "denominator {new_denom} is not a multiple of {}", self.denom);
        let k = (new_denom / self.denom) as i64;
        Self { denom: new_denom, order: self.order, terms: self.terms.iter().map(|(m, c)| (m * k, c.clone())).collect() }
    }

    pub fn promote(&self, new_order: u64) -> Result<Self, AlgebraError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(*m, c.promote(new_order)?);
        }
        Ok(Self { denom: self.denom, order: new_order, terms })
    }

    /// Rewrites both operands over a common denominator and cyclotomic order.
    fn align(&self, other: &Self) -> Result<(Self, Self), AlgebraError> {
        let d = self.denom.lcm(&other.denom);
        let n = self.order.lcm(&other.order);
        Ok((self.rescale(d).promote(n)?, other.rescale(d).promote(n)?))
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        let (mut a, b) = self.align(other)?;
        for (m, c) in b.terms {
            let merged = match a.terms.remove(&m) {
                Some(x) => x.checked_add(&c)?,
                None => c,
            };
            if !merged.is_zero() {
                a.terms.insert(m, merged);
            }
        }
        Ok(a)
    }

    pub fn neg(&self) -> Self {
        Self { denom: self.denom, order: self.order, terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero(self.denom, self.order);
        if k.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, c)| (*m, c.scale(k))).collect();
        out
    }

    /// Exact product; the result lives over lcm of denominators and orders.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        let (a, b) = self.align(other)?;
        let mut out = Self::zero(a.denom, a.order);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let prod = ca.checked_mul(cb)?;
                let slot = out.terms.remove(&(ma + mb));
                let sum = match slot {
                    Some(x) => x.checked_add(&prod)?,
                    None => prod,
                };
                if !sum.is_zero() {
                    out.terms.insert(ma + mb, sum);
                }
            }
        }
        Ok(out)
    }

    pub fn eval(&self, h: f64) -> Complex64 {
        self.terms.iter().map(|(m, c)| c.to_complex() * Complex64::from_polar(1.0, *m as f64 * h / self.denom as f64)).sum()
    }
}

/// Exact product of two exponential Laurent polynomials.
pub fn laurent_mul(p: &ExpLaurentPoly, q: &ExpLaurentPoly) -> Result<ExpLaurentPoly, AlgebraError> {
    p.mul(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrigKind {
    Cos,
    Sin,
}

/// `amplitude · cos|sin((freq_num / freq_den)·h + 2π·phase)` as an exponential
/// Laurent polynomial. `phase` is a fraction of a full turn.
pub fn trig_term(kind: TrigKind, amplitude: &Rational, freq_num: i64, freq_den: u64, phase: &Rational) -> ExpLaurentPoly {
    let q = phase.denom().clone();
    let q: u64 = num_traits::ToPrimitive::to_u64(&q).expect("phase denominator too large");
    let order = 4u64.lcm(&q);
    let k = (phase * Rational::from_integer(order.into())).to_integer();
    let k: i64 = num_traits::ToPrimitive::to_i64(&k).expect("phase numerator too large");
    let half = amplitude / Rational::from_integer(2.into());
    let (plus, minus) = match kind {
        TrigKind::Cos => (GaussianRational::from_rational(half.clone()), GaussianRational::from_rational(half)),
        // 1/(2i) = -i/2
        TrigKind::Sin => (GaussianRational::new(Rational::zero(), -half.clone()), GaussianRational::new(Rational::zero(), half)),
    };
    let phase_up = CyclotomicElement::zeta_pow(order, k);
    let phase_down = CyclotomicElement::zeta_pow(order, -k);
    let c_plus = CyclotomicElement::from_gaussian(order, &plus).unwrap().checked_mul(&phase_up).unwrap();
    let c_minus = CyclotomicElement::from_gaussian(order, &minus).unwrap().checked_mul(&phase_down).unwrap();
    let a = ExpLaurentPoly::monomial(freq_den, freq_num, c_plus);
    let b = ExpLaurentPoly::monomial(freq_den, -freq_num, c_minus);
    a.add(&b).unwrap()
}

/// A polynomial in `u` whose coefficients are exponential Laurent polynomials;
/// `coeffs[k]` multiplies `u^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPolynomial {
    pub coeffs: Vec<ExpLaurentPoly>,
}

impl UPolynomial {
    pub fn constant(c: ExpLaurentPoly) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Multiplies by the monic linear factor `(u - root)`.
    pub fn mul_linear(&self, root: &ExpLaurentPoly) -> Result<Self, AlgebraError> {
        let order = self.coeffs.iter().fold(root.order(), |n, c| n.lcm(&c.order()));
        let denom = self.coeffs.iter().fold(root.denom(), |d, c| d.lcm(&c.denom()));
        let zero = ExpLaurentPoly::zero(denom, order);
        let mut out = vec![zero.clone(); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k + 1] = out[k + 1].add(c)?;
            out[k] = out[k].sub(&c.mul(root)?)?;
        }
        Ok(Self { coeffs: out })
    }

    pub fn eval(&self, u: Complex64, h: f64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * u + c.eval(h))
    }
}

/// Substitutes `e^{ih} → v`, `e^{-ih} → v̄` and projects coefficients to ℚ(i).
pub fn to_semiholo(p: &UPolynomial) -> Result<SemiholoPolynomial, AlgebraError> {
    let mut terms: BTreeMap<Exponents, GaussianRational> = BTreeMap::new();
    for (eu, coeff) in p.coeffs.iter().enumerate() {
        let d = coeff.denom() as i64;
        for (m, c) in coeff.terms() {
            if m % d != 0 {
                return Err(AlgebraError::NonIntegerExponent { exponent: *m, denominator: coeff.denom() });
            }
            let e = m / d;
            let g = c.to_gaussian()?;
            if g.is_zero() {
                continue;
            }
            let key = if e >= 0 { (eu as u32, e as u32, 0) } else { (eu as u32, 0, (-e) as u32) };
            terms.insert(key, g);
        }
    }
    SemiholoPolynomial::from_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn cosine_of_h() {
        let p = trig_term(TrigKind::Cos, &int(1), 1, 1, &int(0));
        let half = CyclotomicElement::from_rational(4, rat(1, 2));
        assert_eq!(p.terms().get(&1), Some(&half));
        assert_eq!(p.terms().get(&-1), Some(&half));
        assert_eq!(p.terms().len(), 2);
    }

    #[test]
    fn phased_sine_matches_numeric() {
        // ½ sin((2h + 2π)/3): phase 1/3 of a turn
        let p = trig_term(TrigKind::Sin, &rat(1, 2), 2, 3, &rat(1, 3));
        assert_eq!(p.denom(), 3);
        assert_eq!(p.terms().keys().copied().collect::<Vec<_>>(), vec![-2, 2]);
        for k in 0..20 {
            let h = 0.37 * k as f64 - 2.0;
            let exact = 0.5 * ((2.0 * h + 2.0 * std::f64::consts::PI) / 3.0).sin();
            assert!(close(p.eval(h), Complex64::new(exact, 0.0), 1e-12));
        }
    }

    #[test]
    fn constant_cosine() {
        let p = trig_term(TrigKind::Cos, &rat(5, 3), 0, 1, &int(0));
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[&0], CyclotomicElement::from_rational(4, rat(5, 3)));
    }

    #[test]
    fn multiplication_identities() {
        let p = trig_term(TrigKind::Sin, &rat(2, 5), 3, 4, &rat(1, 8));
        assert_eq!(laurent_mul(&p, &ExpLaurentPoly::one(4)).unwrap().rescale(4), p.promote(8).unwrap().rescale(4));
        let z = CyclotomicElement::zeta_pow(3, 1);
        let z2 = CyclotomicElement::zeta_pow(3, 2);
        let a = ExpLaurentPoly::monomial(3, 1, z);
        let b = ExpLaurentPoly::monomial(3, -1, z2);
        let prod = laurent_mul(&a, &b).unwrap();
        assert_eq!(prod.terms().len(), 1);
        assert_eq!(prod.terms()[&0], CyclotomicElement::one(3));
    }

    #[test]
    fn two_strand_torus_product() {
        // (u - e^{ih/2})(u + e^{ih/2}) = u² - e^{ih}
        let one = CyclotomicElement::one(4);
        let root = ExpLaurentPoly::monomial(2, 1, one.clone());
        let p = UPolynomial::constant(ExpLaurentPoly::one(4)).mul_linear(&root).unwrap().mul_linear(&root.neg()).unwrap();
        let f = to_semiholo(&p).unwrap();
        let expected = SemiholoPolynomial::from_terms(
            [((2, 0, 0), GaussianRational::from_ints(1, 0)), ((0, 1, 0), GaussianRational::from_ints(-1, 0))].into(),
        )
        .unwrap();
        assert_eq!(f, expected);
        let u = Complex64::new(0.3, -0.8);
        let h = 1.1;
        let direct = (u - Complex64::from_polar(1.0, h / 2.0)) * (u + Complex64::from_polar(1.0, h / 2.0));
        assert!(close(p.eval(u, h), direct, 1e-12));
    }

    #[test]
    fn non_integer_exponent_is_rejected() {
        let root = ExpLaurentPoly::monomial(2, 1, CyclotomicElement::one(4));
        let p = UPolynomial::constant(ExpLaurentPoly::one(4)).mul_linear(&root).unwrap();
        assert!(matches!(to_semiholo(&p), Err(AlgebraError::NonIntegerExponent { exponent: 1, denominator: 2 })));
    }

    #[test]
    fn constant_passes_through() {
        let p = UPolynomial::constant(ExpLaurentPoly::constant(CyclotomicElement::from_rational(4, int(5))));
        let f = to_semiholo(&p).unwrap();
        assert_eq!(f.terms().len(), 1);
        assert_eq!(f.terms()[&(0, 0, 0)], GaussianRational::from_ints(5, 0));
    }
}
