//! Polynomial roots via companion-matrix eigenvalues, polished by Newton.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use super::VerifyError;

/// `p(z)` and `p'(z)` by Horner; `coeffs` lowest degree first.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `Σ |c_k| |z|^k`, the natural scale for residuals at `z`.
pub fn magnitude(coeffs: &[Complex64], z: Complex64) -> f64 {
    let a = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * a + c.norm())
}

/// All roots of `Σ c_k u^k`, lowest degree first.
pub fn find_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, VerifyError> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let lead = *coeffs.last().ok_or(VerifyError::DegenerateLeading)?;
    if scale == 0.0 || lead.norm() <= 1e-14 * scale {
        return Err(VerifyError::DegenerateLeading);
    }
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![-coeffs[0] / coeffs[1]]);
    }
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i] / lead;
    }
    let eig = Schur::try_new(m, f64::EPSILON, 10_000).ok_or(VerifyError::RootFinding)?.eigenvalues().ok_or(VerifyError::RootFinding)?;
    Ok(eig.iter().map(|&z| polish(coeffs, z)).collect())
}

/// One Newton step, kept only if it lowers the residual.
pub fn polish(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let (p, dp) = horner(coeffs, z);
    if dp.norm() == 0.0 {
        return z;
    }
    let next = z - p / dp;
    if horner(coeffs, next).0.norm() < p.norm() {
        next
    } else {
        z
    }
}

/// Largest `|p(z)| / Σ|c_k||z|^k` over the given roots.
pub fn relative_residual(coeffs: &[Complex64], roots: &[Complex64]) -> f64 {
    roots.iter().map(|&z| horner(coeffs, z).0.norm() / magnitude(coeffs, z)).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        v
    }

    #[test]
    fn quadratics() {
        let r = sorted(find_roots(&[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap());
        assert!((r[0] - c(-1.0, 0.0)).norm() < 1e-14 && (r[1] - c(1.0, 0.0)).norm() < 1e-14);
        let r = sorted(find_roots(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap());
        assert!((r[0] - c(0.0, -1.0)).norm() < 1e-14 && (r[1] - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn degree_twelve_residual() {
        // (u - k/7 - i/(k+1)) for k = 0..12
        let mut p = vec![c(1.0, 0.0)];
        let mut want = Vec::new();
        for k in 0..12 {
            let z = c(k as f64 / 7.0, 1.0 / (k as f64 + 1.0));
            want.push(z);
            let mut next = vec![c(0.0, 0.0); p.len() + 1];
            for (i, a) in p.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * z;
            }
            p = next;
        }
        let roots = find_roots(&p).unwrap();
        assert!(relative_residual(&p, &roots) < 1e-10);
        for w in want {
            assert!(roots.iter().any(|z| (z - w).norm() < 1e-6));
        }
    }

    #[test]
    fn degenerate_leading_rejected() {
        assert_eq!(find_roots(&[c(1.0, 0.0), c(0.0, 0.0)]), Err(VerifyError::DegenerateLeading));
    }
}
