//! Floating-point evaluation of exact semiholomorphic polynomials.

use num_complex::Complex64;
use num_traits::Zero;

use crate::algebra::semiholo::SemiholoPolynomial;

/// `f` and its Wirtinger-style partials `∂_u f`, `∂_v f`, `∂_v̄ f` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldValue {
    pub f: Complex64,
    pub du: Complex64,
    pub dv: Complex64,
    pub dvb: Complex64,
}

#[derive(Clone, Debug)]
struct Term {
    eu: usize,
    ev: usize,
    evb: usize,
    c: Complex64,
}

/// Double-precision copy of a [`SemiholoPolynomial`] for repeated evaluation.
#[derive(Clone, Debug)]
pub struct NumericSemiholo {
    terms: Vec<Term>,
    deg_u: usize,
    deg_v: usize,
    deg_vb: usize,
}

fn powers(x: Complex64, n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..=n {
        out.push(acc);
        acc *= x;
    }
    out
}

impl NumericSemiholo {
    pub fn new(f: &SemiholoPolynomial) -> Self {
        let terms: Vec<Term> =
            f.terms().iter().map(|(e, c)| Term { eu: e.0 as usize, ev: e.1 as usize, evb: e.2 as usize, c: c.to_complex() }).collect();
        Self {
            deg_u: terms.iter().map(|t| t.eu).max().unwrap_or(0),
            deg_v: terms.iter().map(|t| t.ev).max().unwrap_or(0),
            deg_vb: terms.iter().map(|t| t.evb).max().unwrap_or(0),
            terms,
        }
    }

    /// From floating-point terms keyed by `(e_u, e_v, e_v̄)`.
    pub fn from_terms(terms: &[((u32, u32, u32), Complex64)]) -> Self {
        let terms: Vec<Term> = terms
            .iter()
            .filter(|(_, c)| *c != Complex64::zero())
            .map(|&((eu, ev, evb), c)| Term { eu: eu as usize, ev: ev as usize, evb: evb as usize, c })
            .collect();
        Self {
            deg_u: terms.iter().map(|t| t.eu).max().unwrap_or(0),
            deg_v: terms.iter().map(|t| t.ev).max().unwrap_or(0),
            deg_vb: terms.iter().map(|t| t.evb).max().unwrap_or(0),
            terms,
        }
    }

    /// `λ^s f(u/λ, v, v̄)` with `s = deg_u f`; turns `f₁` into `f_λ`.
    pub fn stretched(&self, lambda: f64) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.c *= lambda.powi((self.deg_u - t.eu) as i32);
        }
        out
    }

    pub fn deg_u(&self) -> usize {
        self.deg_u
    }

    pub fn eval(&self, u: Complex64, v: Complex64) -> Complex64 {
        let pu = powers(u, self.deg_u);
        let pv = powers(v, self.deg_v);
        let pvb = powers(v.conj(), self.deg_vb);
        self.terms.iter().map(|t| t.c * pu[t.eu] * pv[t.ev] * pvb[t.evb]).sum()
    }

    pub fn eval_with_partials(&self, u: Complex64, v: Complex64) -> FieldValue {
        let pu = powers(u, self.deg_u);
        let pv = powers(v, self.deg_v);
        let pvb = powers(v.conj(), self.deg_vb);
        let mut out = FieldValue { f: Complex64::zero(), du: Complex64::zero(), dv: Complex64::zero(), dvb: Complex64::zero() };
        for t in &self.terms {
            let (a, b, c) = (pu[t.eu], pv[t.ev], pvb[t.evb]);
            out.f += t.c * a * b * c;
            if t.eu > 0 {
                out.du += t.c * (t.eu as f64) * pu[t.eu - 1] * b * c;
            }
            if t.ev > 0 {
                out.dv += t.c * (t.ev as f64) * a * pv[t.ev - 1] * c;
            }
            if t.evb > 0 {
                out.dvb += t.c * (t.evb as f64) * a * b * pvb[t.evb - 1];
            }
        }
        out
    }

    /// Coefficients of `f(·, v, v̄)` as a polynomial in `u`, lowest degree first.
    pub fn u_coefficients(&self, v: Complex64) -> Vec<Complex64> {
        let pv = powers(v, self.deg_v);
        let pvb = powers(v.conj(), self.deg_vb);
        let mut out = vec![Complex64::zero(); self.deg_u + 1];
        for t in &self.terms {
            out[t.eu] += t.c * pv[t.ev] * pvb[t.evb];
        }
        out
    }
}

/// `f(u, v, v̄)` and its partials.
pub fn evaluate(f: &SemiholoPolynomial, u: Complex64, v: Complex64) -> FieldValue {
    NumericSemiholo::new(f).eval_with_partials(u, v)
}
