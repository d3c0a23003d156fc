//! Substitution of the stereographic coordinates of ℝ³ into `f(u, v, v̄)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebra::gaussian::GaussianRational;
use crate::algebra::rational::{lcm_of_denominators, rational_to_json_compact, Rational};
use crate::algebra::semiholo::SemiholoPolynomial;
use crate::algebra::sparse::SparsePoly;

/// `F(x, y, z)`: exact coefficients, plus the integer multiple `clearing · F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpatialPolynomial {
    exact: SparsePoly<3>,
    integer: SparsePoly<3>,
    clearing: BigInt,
}

impl SpatialPolynomial {
    pub fn new(exact: SparsePoly<3>) -> Self {
        let clearing = lcm_of_denominators(exact.terms().values().flat_map(|c| [&c.re, &c.im]));
        let integer = exact.scale_rational(&Rational::from_integer(clearing.clone()));
        Self { exact, integer, clearing }
    }

    pub fn exact(&self) -> &SparsePoly<3> {
        &self.exact
    }

    pub fn integer(&self) -> &SparsePoly<3> {
        &self.integer
    }

    pub fn clearing(&self) -> &BigInt {
        &self.clearing
    }

    /// Integerized terms sorted by `(ex, ey, ez)` descending, and the clearing constant.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .integer
            .terms()
            .iter()
            .rev()
            .map(|(e, c)| {
                json!({"ex": e[0], "ey": e[1], "ez": e[2], "re": rational_to_json_compact(&c.re), "im": rational_to_json_compact(&c.im)})
            })
            .collect();
        json!({"terms": terms, "clearing": crate::algebra::rational::bigint_to_json(&self.clearing)})
    }
}

/// `u = (r² - 1 + 2iz)/(r² + 1)`, `v = 2(x + iy)/(r² + 1)`, numerator after multiplying
/// by `(r² + 1)^d` with `d` the total degree of `f`.
pub fn stereographic_substitute(f: &SemiholoPolynomial) -> SpatialPolynomial {
    let x = SparsePoly::<3>::var(0);
    let y = SparsePoly::<3>::var(1);
    let z = SparsePoly::<3>::var(2);
    let one = SparsePoly::<3>::constant(GaussianRational::from_ints(1, 0));
    let two = GaussianRational::from_ints(2, 0);
    let i = GaussianRational::i();
    let r2 = x.mul(&x).add(&y.mul(&y)).add(&z.mul(&z));
    let u_num = r2.sub(&one).add(&z.scale(&(&two * &i)));
    let v_num = x.add(&y.scale(&i)).scale(&two);
    let vb_num = v_num.conj();
    let denom = r2.add(&one);

    let d = f.total_degree();
    let mut cache: BTreeMap<(u8, u32), SparsePoly<3>> = BTreeMap::new();
    let mut pow = |which: u8, k: u32| -> SparsePoly<3> {
        cache
            .entry((which, k))
            .or_insert_with(|| match which {
                0 => u_num.pow(k),
                1 => v_num.pow(k),
                2 => vb_num.pow(k),
                _ => denom.pow(k),
            })
            .clone()
    };
    let mut out = SparsePoly::<3>::zero();
    for (e, c) in f.terms() {
        let term = pow(0, e.0).mul(&pow(1, e.1)).mul(&pow(2, e.2)).mul(&pow(3, d - e.0 - e.1 - e.2));
        out = out.add(&term.scale(c));
    }
    SpatialPolynomial::new(out)
}

/// Inverse of the stereographic coordinates: the point of `S³ ⊂ ℂ²` for `(x, y, z)`.
pub fn stereographic_point(p: [f64; 3]) -> (num_complex::Complex64, num_complex::Complex64) {
    use num_complex::Complex64;
    let r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    let d = r2 + 1.0;
    (Complex64::new((r2 - 1.0) / d, 2.0 * p[2] / d), Complex64::new(2.0 * p[0] / d, 2.0 * p[1] / d))
}

/// Stereographic projection of a point of `S³` (not the pole `u = 1`) to ℝ³.
pub fn stereographic_projection(u: num_complex::Complex64, v: num_complex::Complex64) -> [f64; 3] {
    let d = 1.0 - u.re;
    [v.re / d, v.im / d, u.im / d]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::eval::NumericSemiholo;

    #[test]
    fn linear_examples() {
        let u = SemiholoPolynomial::from_int_terms(&[(1, 0, 0, 1, 0)]).unwrap();
        let f = stereographic_substitute(&u);
        let t = f.exact().terms();
        assert_eq!(t.len(), 5);
        assert_eq!(t[&[2, 0, 0]], GaussianRational::from_ints(1, 0));
        assert_eq!(t[&[0, 0, 0]], GaussianRational::from_ints(-1, 0));
        assert_eq!(t[&[0, 0, 1]], GaussianRational::from_ints(0, 2));
        let v = SemiholoPolynomial::from_int_terms(&[(0, 1, 0, 1, 0)]).unwrap();
        let g = stereographic_substitute(&v);
        assert_eq!(g.exact().terms().len(), 2);
        assert_eq!(g.exact().terms()[&[0, 1, 0]], GaussianRational::from_ints(0, 2));
        assert_eq!(g.clearing(), &BigInt::from(1));
    }

    #[test]
    fn trefoil_numerator_matches_substitution() {
        let f = SemiholoPolynomial::from_int_terms(&[(2, 0, 0, 1, 0), (0, 3, 0, -1, 0)]).unwrap();
        let sp = stereographic_substitute(&f);
        let num = NumericSemiholo::new(&f);
        for k in 0..40 {
            let p = [(0.3 * k as f64).sin() * 1.7, (0.7 * k as f64).cos(), 0.05 * k as f64 - 1.0];
            let (u, v) = stereographic_point(p);
            let r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
            let expected = num.eval(u, v) * (r2 + 1.0).powi(3);
            let got = sp.exact().eval(&p);
            assert!((got - expected).norm() < 1e-10 * (1.0 + expected.norm()));
            let back = stereographic_projection(u, v);
            for i in 0..3 {
                assert!((back[i] - p[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn clearing_constant() {
        let mut terms = std::collections::BTreeMap::new();
        terms.insert((1, 0, 0), GaussianRational::from_rational(Rational::new(1.into(), 6.into())));
        let f = SemiholoPolynomial::from_terms(terms).unwrap();
        let sp = stereographic_substitute(&f);
        assert_eq!(sp.clearing(), &BigInt::from(6));
        assert_eq!(sp.integer(), &sp.exact().scale_rational(&Rational::from_integer(6.into())));
    }
}
