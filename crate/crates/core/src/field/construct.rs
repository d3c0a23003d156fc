//! Exact expansion of `Π_j (u - λ Z_j(h))` and the semiholomorphic field it defines.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::cyclotomic::CyclotomicElement;
use crate::algebra::laurent::{to_semiholo, ExpLaurentPoly, UPolynomial};
use crate::algebra::rational::{int, Rational};
use crate::algebra::semiholo::SemiholoPolynomial;
use crate::algebra::AlgebraError;
use crate::braid::strand::{freq_denominator, phase_order};
use crate::braid::{spec_strands, LemniscateSpec, TrigStrand};

/// Element of the integer group ring `ℤ[x]/(x^N - 1)`, dense.
type GroupRing = Vec<BigInt>;

/// One monomial `c·x^k·e^{imh/D}` of a scaled strand.
struct Mono {
    m: i64,
    k: usize,
    c: BigInt,
}

/// `Π_j (u - λ Z_j(h))` with exact coefficients.
///
/// Accumulates in `ℤ[x]/(x^N - 1)` with all strand coefficients cleared to integers,
/// reducing modulo `Φ_N` only once at the end. [`braid_polynomial_reference`] performs
/// the same product in reduced cyclotomic arithmetic.
pub fn braid_polynomial(strands: &[TrigStrand], lambda: &Rational) -> Result<UPolynomial, AlgebraError> {
    let denom = freq_denominator(strands);
    let order = phase_order(strands);
    let n = order as usize;
    let quarter = n / 4;

    // common denominator of every λ·coefficient part
    let mut clear = BigInt::one();
    for z in strands {
        for t in z.terms() {
            for part in [&t.coeff.re, &t.coeff.im] {
                clear = clear.lcm((part * lambda).denom());
            }
        }
    }
    let clear_q = Rational::from_integer(clear.clone());

    let scaled: Vec<Vec<Mono>> = strands
        .iter()
        .map(|z| {
            let mut monos = Vec::new();
            for t in z.terms() {
                let m = (&t.freq * int(denom as i64)).to_integer().to_i64().expect("exponent");
                let k = (&t.phase * int(order as i64)).to_integer().to_usize().expect("phase index");
                let re = (&t.coeff.re * lambda * &clear_q).to_integer();
                let im = (&t.coeff.im * lambda * &clear_q).to_integer();
                if !re.is_zero() {
                    monos.push(Mono { m, k, c: re });
                }
                if !im.is_zero() {
                    monos.push(Mono { m, k: (k + quarter) % n, c: im });
                }
            }
            monos
        })
        .collect();

    // coeffs[e_u][m] ∈ ℤ[x]/(x^N - 1)
    let mut unit = vec![BigInt::zero(); n];
    unit[0] = BigInt::one();
    let mut coeffs: Vec<BTreeMap<i64, GroupRing>> = vec![BTreeMap::from([(0, unit)])];
    for monos in &scaled {
        let mut next: Vec<BTreeMap<i64, GroupRing>> = vec![BTreeMap::new(); coeffs.len() + 1];
        for (eu, by_m) in coeffs.iter().enumerate() {
            for (&m, elem) in by_m {
                // clear·u term
                let slot = next[eu + 1].entry(m).or_insert_with(|| vec![BigInt::zero(); n]);
                for (dst, src) in slot.iter_mut().zip(elem) {
                    if !src.is_zero() {
                        *dst += src * &clear;
                    }
                }
                // -clear·Z_j term
                for mono in monos {
                    let slot = next[eu].entry(m + mono.m).or_insert_with(|| vec![BigInt::zero(); n]);
                    for (i, src) in elem.iter().enumerate() {
                        if !src.is_zero() {
                            slot[(i + mono.k) % n] -= src * &mono.c;
                        }
                    }
                }
            }
        }
        coeffs = next;
    }

    let total = num_traits::pow(clear, strands.len());
    let coeffs = coeffs
        .into_iter()
        .map(|by_m| {
            let mut p = ExpLaurentPoly::zero(denom, order);
            for (m, elem) in by_m {
                let c = CyclotomicElement::from_integer_poly(order, elem, &total);
                if !c.is_zero() {
                    p = p.add(&ExpLaurentPoly::monomial(denom, m, c))?;
                }
            }
            Ok(p)
        })
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    Ok(UPolynomial { coeffs })
}

/// Same product as [`braid_polynomial`], multiplied out one linear factor at a time in
/// `ℚ(ζ_N)[e^{±ih/D}]`. Slower; kept as an independent check.
pub fn braid_polynomial_reference(strands: &[TrigStrand], lambda: &Rational) -> Result<UPolynomial, AlgebraError> {
    let denom = freq_denominator(strands);
    let order = phase_order(strands);
    let mut p = UPolynomial::constant(ExpLaurentPoly::one(order).rescale(denom));
    for z in strands {
        p = p.mul_linear(&z.scaled(lambda).to_laurent(denom, order))?;
    }
    Ok(p)
}

/// `f(u, v, v̄)` for strands scaled by λ.
pub fn build_field_from_strands(strands: &[TrigStrand], lambda: &Rational) -> Result<SemiholoPolynomial, AlgebraError> {
    to_semiholo(&braid_polynomial(strands, lambda)?)
}

/// `f_λ` of a lemniscate spec (its λ, a, b and rotation count included).
pub fn build_field(spec: &LemniscateSpec) -> Result<SemiholoPolynomial, AlgebraError> {
    build_field_from_strands(&spec_strands(spec), &int(1))
}

/// Multiplies through by the positive LCM of all coefficient denominators.
pub fn integerize(f: &SemiholoPolynomial) -> (SemiholoPolynomial, BigInt) {
    let (g, k) = f.integerize();
    debug_assert!(k.is_positive());
    (g, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::GaussianRational;
    use crate::algebra::rational::rat;
    use crate::braid::{lemniscate_strands, ExpTerm};
    use num_complex::Complex64;

    #[test]
    fn fast_route_matches_reference() {
        let specs = [
            LemniscateSpec::new(3, 2, 2).unwrap(),
            LemniscateSpec::new(2, 3, 1).unwrap(),
            LemniscateSpec::new(4, 2, 3).unwrap(),
            LemniscateSpec::with_params(5, 1, 2, rat(2, 3), rat(-3, 5), rat(7, 4)).unwrap(),
            LemniscateSpec::new(3, 2, 2).unwrap().with_rotation(1),
        ];
        for spec in specs {
            let strands = spec_strands(&spec);
            let lam = rat(3, 2);
            let fast = braid_polynomial(&strands, &lam).unwrap();
            let slow = braid_polynomial_reference(&strands, &lam).unwrap();
            assert_eq!(fast, slow, "{spec:?}");
        }
    }

    #[test]
    fn torus_field() {
        let f = build_field(&LemniscateSpec::new(2, 3, 1).unwrap()).unwrap();
        assert_eq!(f, SemiholoPolynomial::from_int_terms(&[(2, 0, 0, 1, 0), (0, 3, 0, -1, 0)]).unwrap());
    }

    #[test]
    fn single_zero_strand() {
        let f = build_field_from_strands(&[TrigStrand::zero()], &int(1)).unwrap();
        assert_eq!(f, SemiholoPolynomial::from_int_terms(&[(1, 0, 0, 1, 0)]).unwrap());
    }

    #[test]
    fn integerize_examples() {
        let f = build_field(&LemniscateSpec::new(3, 2, 2).unwrap()).unwrap();
        let (g, k) = integerize(&f);
        assert_eq!(k, BigInt::from(64));
        assert_eq!(g.terms()[&(3, 0, 0)], GaussianRational::from_ints(64, 0));
    }

    #[test]
    fn product_matches_numeric_roots() {
        let spec = LemniscateSpec::with_params(5, 3, 2, rat(1, 2), rat(3, 4), rat(5, 7)).unwrap();
        let strands = lemniscate_strands(&spec);
        let p = braid_polynomial(&strands, &int(1)).unwrap();
        for k in 0..30 {
            let h = 0.21 * k as f64;
            let u = Complex64::new(0.3 - 0.02 * k as f64, 0.1 + 0.01 * k as f64);
            let direct: Complex64 = strands.iter().map(|z| u - z.eval(h)).product();
            assert!((p.eval(u, h) - direct).norm() < 1e-10 * (1.0 + direct.norm()));
        }
    }

    #[test]
    fn spurious_phase_is_not_gaussian() {
        // every root of the torus pair turned by a third of a turn
        let third = rat(1, 3);
        let strands: Vec<TrigStrand> = lemniscate_strands(&LemniscateSpec::new(2, 3, 1).unwrap())
            .iter()
            .map(|z| TrigStrand::new(z.terms().iter().map(|t| ExpTerm::new(t.coeff.clone(), t.freq.clone(), &t.phase + &third))))
            .collect();
        assert!(matches!(build_field_from_strands(&strands, &int(1)), Err(AlgebraError::NotGaussian(_))));
    }
}
