//! Sparse multivariate polynomials in `K` real variables with ℚ(i) coefficients.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;

use super::gaussian::GaussianRational;
use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly<const K: usize> {
    terms: BTreeMap<[u32; K], GaussianRational>,
}

impl<const K: usize> SparsePoly<K> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial([0; K], c)
    }

    pub fn monomial(exps: [u32; K], c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { terms }
    }

    /// The coordinate `x_i`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; K];
        e[i] = 1;
        Self::monomial(e, GaussianRational::from_ints(1, 0))
    }

    pub fn terms(&self) -> &BTreeMap<[u32; K], GaussianRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn accumulate(&mut self, e: [u32; K], c: &GaussianRational) {
        let slot = self.terms.entry(e).or_insert_with(GaussianRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(*e, &-c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = [0; K];
                for k in 0..K {
                    e[k] = ea[k] + eb[k];
                }
                out.accumulate(e, &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::constant(GaussianRational::from_ints(1, 0));
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.accumulate(*e, &(c * k));
        }
        out
    }

    pub fn scale_rational(&self, k: &Rational) -> Self {
        self.scale(&GaussianRational::from_rational(k.clone()))
    }

    /// Complex conjugate of every coefficient (the variables are real).
    pub fn conj(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c.conj())).collect() }
    }

    pub fn eval(&self, x: &[f64; K]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mono: f64 = e.iter().zip(x).map(|(&k, &xi)| xi.powi(k as i32)).product();
                c.to_complex() * mono
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_square() {
        let x = SparsePoly::<2>::var(0);
        let y = SparsePoly::<2>::var(1);
        let sq = x.add(&y).pow(2);
        assert_eq!(sq.terms().len(), 3);
        assert_eq!(sq.terms()[&[1, 1]], GaussianRational::from_ints(2, 0));
        assert!(x.sub(&x).is_zero());
        assert_eq!(sq.total_degree(), 2);
        let v = sq.eval(&[0.5, 1.5]);
        assert!((v.re - 4.0).abs() < 1e-14 && v.im == 0.0);
    }
}
