//! Hopfion initial data `φ: ℝ³ → S²` from the rational map `W = c v^N / f^m`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::eval::NumericSemiholo;
use super::FieldError;
use crate::algebra::rational::{to_f64, Rational};
use crate::algebra::semiholo::SemiholoPolynomial;

/// Monotone radial profile with `d(0) = π` and `d(∞) = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Profile {
    /// `4 arctan(e^{-r/w})`.
    Arctan { width: f64 },
    /// `π(1 - r/R)` inside the ball of radius `R`, zero outside.
    Linear { radius: f64 },
}

impl Default for Profile {
    fn default() -> Self {
        Profile::Arctan { width: 1.0 }
    }
}

impl Profile {
    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            Profile::Arctan { width } => 4.0 * (-r / width).exp().atan(),
            Profile::Linear { radius } => {
                if r >= radius {
                    0.0
                } else {
                    PI * (1.0 - r / radius)
                }
            }
        }
    }

    /// `sin(d(r))/r`, continuous at the origin.
    fn sin_over_r(&self, r: f64) -> f64 {
        const SMALL: f64 = 1e-6;
        if r < SMALL {
            self.eval(SMALL).sin() / SMALL
        } else {
            self.eval(r).sin() / r
        }
    }
}

#[derive(Clone, Debug)]
pub struct HopfionSpec {
    pub f: SemiholoPolynomial,
    /// Power of `v` in the numerator.
    pub n: u32,
    /// Multiplicity of the denominator.
    pub m: u32,
    pub numerator_constant: Rational,
    pub profile: Profile,
}

impl HopfionSpec {
    pub fn new(f: SemiholoPolynomial, n: u32) -> Self {
        Self { f, n, m: 1, numerator_constant: Rational::from_integer(1.into()), profile: Profile::default() }
    }

    /// `Q = N · deg_u f · m`.
    pub fn predicted_charge(&self) -> u32 {
        self.n * self.f.deg_u() * self.m
    }

    pub fn validate(&self) -> Result<(), FieldError> {
        if self.m == 0 {
            return Err(FieldError::InvalidHopfion("multiplicity must be at least 1".into()));
        }
        if self.f.is_zero() {
            return Err(FieldError::InvalidHopfion("denominator polynomial is zero".into()));
        }
        let at_vacuum = NumericSemiholo::new(&self.f).eval(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        if at_vacuum.norm() < 1e-12 {
            return Err(FieldError::InvalidHopfion("f(1, 0) = 0: the field has no vacuum at infinity".into()));
        }
        match self.profile {
            Profile::Arctan { width } if width > 0.0 => Ok(()),
            Profile::Linear { radius } if radius > 0.0 => Ok(()),
            _ => Err(FieldError::InvalidHopfion("profile scale must be positive".into())),
        }
    }
}

/// Pointwise evaluator built from a [`HopfionSpec`].
#[derive(Clone, Debug)]
pub struct HopfionField {
    f: NumericSemiholo,
    c: f64,
    n: i32,
    m: i32,
    profile: Profile,
}

pub const VACUUM: [f64; 3] = [0.0, 0.0, 1.0];
pub const SOUTH_POLE: [f64; 3] = [0.0, 0.0, -1.0];

pub fn hopfion_field(spec: &HopfionSpec) -> Result<HopfionField, FieldError> {
    spec.validate()?;
    Ok(HopfionField {
        f: NumericSemiholo::new(&spec.f),
        c: to_f64(&spec.numerator_constant),
        n: spec.n as i32,
        m: spec.m as i32,
        profile: spec.profile,
    })
}

/// `φ₃ = (1 - |W|²)/(1 + |W|²)`, `φ₁ + iφ₂ = 2W/(1 + |W|²)`.
pub fn inverse_stereographic(w: Complex64) -> [f64; 3] {
    let n2 = w.norm_sqr();
    if !n2.is_finite() {
        return SOUTH_POLE;
    }
    let d = 1.0 + n2;
    [2.0 * w.re / d, 2.0 * w.im / d, (1.0 - n2) / d]
}

/// `W = (φ₁ + iφ₂)/(1 + φ₃)`; `None` at the south pole.
pub fn stereographic_w(phi: [f64; 3]) -> Option<Complex64> {
    let d = 1.0 + phi[2];
    (d.abs() > 1e-15).then(|| Complex64::new(phi[0] / d, phi[1] / d))
}

impl HopfionField {
    /// `(cos d + i z sin d / r, (x + iy) sin d / r)`.
    pub fn uv(&self, p: [f64; 3]) -> (Complex64, Complex64) {
        let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        let d = self.profile.eval(r);
        let k = self.profile.sin_over_r(r);
        (Complex64::new(d.cos(), p[2] * k), Complex64::new(p[0] * k, p[1] * k))
    }

    /// Numerator and denominator of `W` at a point of ℝ³.
    pub fn numerator_denominator(&self, p: [f64; 3]) -> (Complex64, Complex64) {
        let (u, v) = self.uv(p);
        (self.c * v.powi(self.n), self.f.eval(u, v).powi(self.m))
    }

    pub fn w(&self, p: [f64; 3]) -> Complex64 {
        let (g, f) = self.numerator_denominator(p);
        g / f
    }

    /// `φ(x)`; zeros of `f` map to the south pole.
    pub fn phi(&self, p: [f64; 3]) -> [f64; 3] {
        let (g, f) = self.numerator_denominator(p);
        if f.norm() == 0.0 {
            return SOUTH_POLE;
        }
        inverse_stereographic(g / f)
    }

    /// A complex function vanishing exactly on the preimage of `target`: `f` for the
    /// south pole, otherwise `c v^N - W_target f^m`.
    pub fn preimage_function(&self, target: [f64; 3]) -> impl Fn([f64; 3]) -> Complex64 + Sync + '_ {
        let w = stereographic_w(target);
        move |p| {
            let (u, v) = self.uv(p);
            match w {
                None => self.f.eval(u, v),
                Some(w) => self.c * v.powi(self.n) - w * self.f.eval(u, v).powi(self.m),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn planar_ring() -> HopfionSpec {
        HopfionSpec::new(SemiholoPolynomial::from_int_terms(&[(1, 0, 0, 1, 0)]).unwrap(), 1)
    }

    #[test]
    fn profile_boundary_values() {
        let p = Profile::default();
        assert!((p.eval(0.0) - PI).abs() < 1e-15);
        assert!(p.eval(60.0) < 1e-20);
        let mut prev = p.eval(0.0);
        for k in 1..100 {
            let d = p.eval(0.1 * k as f64);
            assert!(d < prev);
            prev = d;
        }
    }

    #[test]
    fn vacuum_at_infinity() {
        let field = hopfion_field(&planar_ring()).unwrap();
        let phi = field.phi([40.0, 3.0, -20.0]);
        assert!((phi[2] - 1.0).abs() < 1e-12);
        let (u, v) = field.uv([0.0, 0.0, 0.0]);
        assert!((u - Complex64::new(-1.0, 0.0)).norm() < 1e-12 && v.norm() < 1e-12);
    }

    #[test]
    fn maps_onto_unit_sphere() {
        let field = hopfion_field(&planar_ring()).unwrap();
        for k in 0..30 {
            let p = [0.3 * k as f64 - 4.0, (k as f64).sin(), (0.4 * k as f64).cos()];
            let (u, v) = field.uv(p);
            assert!((u.norm_sqr() + v.norm_sqr() - 1.0).abs() < 1e-12);
            let phi = field.phi(p);
            assert!((phi.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn charge_prediction() {
        let mut spec = planar_ring();
        spec.f = SemiholoPolynomial::from_int_terms(&[(3, 0, 0, 1, 0), (0, 2, 0, -1, 0)]).unwrap();
        assert_eq!(spec.predicted_charge(), 3);
        spec.n = 0;
        assert_eq!(spec.predicted_charge(), 0);
        spec.m = 0;
        assert!(hopfion_field(&spec).is_err());
    }

    #[test]
    fn stereographic_round_trip() {
        let w = Complex64::new(0.3, -1.7);
        let back = stereographic_w(inverse_stereographic(w)).unwrap();
        assert!((back - w).norm() < 1e-14);
        assert_eq!(stereographic_w(SOUTH_POLE), None);
    }
}
