//! Real polynomial `F: ℝ⁴ → ℝ²` whose zero set meets small spheres in the lemniscate link.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Value};

use super::FieldError;
use crate::algebra::gaussian::GaussianRational;
use crate::algebra::rational::{rational_to_json_compact, Rational};
use crate::algebra::semiholo::SemiholoPolynomial;
use crate::algebra::sparse::SparsePoly;

/// `c · ρ^{rho} · u^{eu} v^{ev} v̄^{evb}` with `ρ² = |u|² + |v|²` and `rho` even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedTerm {
    pub eu: u32,
    pub ev: u32,
    pub evb: u32,
    pub rho: u32,
    pub coeff: GaussianRational,
}

/// `F = Re F + i Im F` in `x₁ = Re u, x₂ = Im u, x₃ = Re v, x₄ = Im v`, with the
/// compact graded form it was expanded from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealPolynomial4 {
    pub re: BTreeMap<[u32; 4], Rational>,
    pub im: BTreeMap<[u32; 4], Rational>,
    pub graded: Vec<GradedTerm>,
}

impl RealPolynomial4 {
    fn from_graded(graded: Vec<GradedTerm>) -> Self {
        let x = [0, 1, 2, 3].map(SparsePoly::<4>::var);
        let i = GaussianRational::i();
        let u = x[0].add(&x[1].scale(&i));
        let v = x[2].add(&x[3].scale(&i));
        let vb = v.conj();
        let rho2 = x.iter().fold(SparsePoly::<4>::zero(), |acc, xi| acc.add(&xi.mul(xi)));
        let mut total = SparsePoly::<4>::zero();
        for t in &graded {
            let term = u.pow(t.eu).mul(&v.pow(t.ev)).mul(&vb.pow(t.evb)).mul(&rho2.pow(t.rho / 2));
            total = total.add(&term.scale(&t.coeff));
        }
        let mut re = BTreeMap::new();
        let mut im = BTreeMap::new();
        for (e, c) in total.terms() {
            if !c.re.is_zero() {
                re.insert(*e, c.re.clone());
            }
            if !c.im.is_zero() {
                im.insert(*e, c.im.clone());
            }
        }
        Self { re, im, graded }
    }

    /// Numeric value of `F` from the expanded real form.
    pub fn eval(&self, x: &[f64; 4]) -> Complex64 {
        Complex64::new(eval_real(&self.re, x), eval_real(&self.im, x))
    }

    /// Rows `∇ Re F`, `∇ Im F`.
    pub fn gradient(&self, x: &[f64; 4]) -> [[f64; 4]; 2] {
        [grad_real(&self.re, x), grad_real(&self.im, x)]
    }

    pub fn total_degree(&self) -> u32 {
        self.re.keys().chain(self.im.keys()).map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Lowest total degree of any monomial; `F(0) = 0` and a singular origin need ≥ 2.
    pub fn min_degree(&self) -> u32 {
        self.re.keys().chain(self.im.keys()).map(|e| e.iter().sum()).min().unwrap_or(0)
    }

    /// Coefficients of `F` on the sphere `|u|² + |v|² = ρ²` after `u = ρu'`, `v = ρv'`,
    /// as a polynomial in `(u', v', v̄')`; keyed like [`SemiholoPolynomial`].
    pub fn on_sphere(&self, radius: f64) -> Vec<((u32, u32, u32), Complex64)> {
        let mut acc: BTreeMap<(u32, u32, u32), Complex64> = BTreeMap::new();
        for t in &self.graded {
            let p = radius.powi((t.rho + t.eu + t.ev + t.evb) as i32);
            *acc.entry((t.eu, t.ev, t.evb)).or_insert_with(Complex64::zero) += t.coeff.to_complex() * p;
        }
        acc.into_iter().collect()
    }

    pub fn to_json(&self) -> Value {
        let part = |m: &BTreeMap<[u32; 4], Rational>| -> Vec<Value> {
            m.iter().rev().map(|(e, c)| json!({"e": e, "c": rational_to_json_compact(c)})).collect()
        };
        json!({"re": part(&self.re), "im": part(&self.im)})
    }
}

fn eval_real(m: &BTreeMap<[u32; 4], Rational>, x: &[f64; 4]) -> f64 {
    m.iter().map(|(e, c)| crate::algebra::rational::to_f64(c) * (0..4).map(|k| x[k].powi(e[k] as i32)).product::<f64>()).sum()
}

fn grad_real(m: &BTreeMap<[u32; 4], Rational>, x: &[f64; 4]) -> [f64; 4] {
    let mut g = [0.0; 4];
    for (e, c) in m {
        let c = crate::algebra::rational::to_f64(c);
        for (k, gk) in g.iter_mut().enumerate() {
            if e[k] == 0 {
                continue;
            }
            let mut prod = c * e[k] as f64;
            for j in 0..4 {
                let p = if j == k { e[j] - 1 } else { e[j] };
                prod *= x[j].powi(p as i32);
            }
            *gk += prod;
        }
    }
    g
}

/// `F(u, v) = ρ^{s + deg f} f₁(u/ρ², v/ρ)` (times one more `ρ` if that power is odd),
/// i.e. `Σ c ρ^{M - 2e_u - e_v - e_v̄} u^{e_u} v^{e_v} v̄^{e_v̄}` with `M` even.
pub fn milnor_polynomial(f1: &SemiholoPolynomial, r: u32) -> Result<RealPolynomial4, FieldError> {
    if r % 2 == 1 {
        return Err(FieldError::OddRepeats(r));
    }
    if let Some((e, _)) = f1.terms().iter().find(|(e, _)| (e.1 + e.2) % 2 == 1) {
        return Err(FieldError::OddVExponent { ev: e.1, evb: e.2 });
    }
    let s = f1.deg_u();
    let mut m = s + f1.total_degree();
    if m % 2 == 1 {
        m += 1;
    }
    let graded =
        f1.terms().iter().map(|(e, c)| GradedTerm { eu: e.0, ev: e.1, evb: e.2, rho: m - 2 * e.0 - e.1 - e.2, coeff: c.clone() }).collect();
    Ok(RealPolynomial4::from_graded(graded))
}

/// The Brauner map `u^p - v^q` as a real polynomial (no ρ factors).
pub fn brauner_polynomial(p: u32, q: u32) -> RealPolynomial4 {
    RealPolynomial4::from_graded(vec![
        GradedTerm { eu: p, ev: 0, evb: 0, rho: 0, coeff: GaussianRational::from_ints(1, 0) },
        GradedTerm { eu: 0, ev: q, evb: 0, rho: 0, coeff: GaussianRational::from_ints(-1, 0) },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::LemniscateSpec;
    use crate::field::construct::build_field;
    use crate::field::eval::NumericSemiholo;

    #[test]
    fn figure_eight_expansion_matches_formula() {
        let f1 = build_field(&LemniscateSpec::new(3, 2, 2).unwrap()).unwrap();
        let big = milnor_polynomial(&f1, 2).unwrap();
        let num = NumericSemiholo::new(&f1);
        assert!(big.min_degree() >= 2);
        for k in 0..50 {
            let x = [(0.3 * k as f64).sin(), (0.5 * k as f64).cos() * 0.7, 0.02 * k as f64 - 0.4, (1.1 * k as f64).sin() * 0.3];
            let rho = x.iter().map(|t| t * t).sum::<f64>().sqrt();
            let u = Complex64::new(x[0], x[1]);
            let v = Complex64::new(x[2], x[3]);
            // ρ^{s + deg f} f₁(u/ρ², v/ρ) with s = 3, deg = 4, times one ρ
            let expected = num.eval(u / (rho * rho), v / rho) * rho.powi(8);
            let got = big.eval(&x);
            assert!((got - expected).norm() < 1e-9 * (1.0 + expected.norm()), "{got} vs {expected}");
        }
    }

    #[test]
    fn odd_repeats_rejected() {
        let f1 = build_field(&LemniscateSpec::new(3, 3, 2).unwrap()).unwrap();
        assert!(matches!(milnor_polynomial(&f1, 3), Err(FieldError::OddRepeats(3))));
    }

    #[test]
    fn brauner_is_plain() {
        let b = brauner_polynomial(2, 3);
        assert_eq!(b.total_degree(), 3);
        let x = [0.3, -0.2, 0.5, 0.1];
        let u = Complex64::new(0.3, -0.2);
        let v = Complex64::new(0.5, 0.1);
        assert!((b.eval(&x) - (u * u - v * v * v)).norm() < 1e-14);
    }
}
