//! The nodal set of `f` on the unit three-sphere, found by following each root of
//! `f(·, ρe^{ih})` from `ρ = 1` inwards until it meets `|u|² + ρ² = 1`.

use nalgebra::Matrix3x4;
use num_complex::Complex64;

use super::roots::{find_roots, magnitude};
use super::track::{recover_braid_word, track_samples, RootTrack};
use super::{NodalCurve, VerifyError, VerifyOptions};
use crate::braid::BraidWord;
use crate::field::eval::NumericSemiholo;
use crate::field::milnor::RealPolynomial4;

/// Closed nodal curve on `S³` with the quantities that certify it.
#[derive(Clone, Debug)]
pub struct NodalCertificate {
    pub track: RootTrack,
    pub word: BraidWord,
    pub curves: Vec<NodalCurve>,
    /// Smallest `|∂_u f| / Σ|c_k| max(1,|u|)^k` over the curve.
    pub min_transversality: f64,
    /// Smallest `|d(|u|² + ρ²)/dρ|` along the root branches at the crossing.
    pub min_sphere_angle: f64,
    pub max_residual: f64,
}

impl NodalCertificate {
    pub fn components(&self) -> usize {
        self.curves.len()
    }

    /// All curve points as `(u, v)`.
    pub fn points(&self) -> impl Iterator<Item = [f64; 4]> + '_ {
        self.curves.iter().flat_map(|c| c.points.iter().map(|p| [p[0], p[1], p[2], p[3]]))
    }
}

fn v_at(rho: f64, h: f64) -> Complex64 {
    Complex64::from_polar(rho, h)
}

/// `du/dρ` along a root branch of `f(·, ρe^{ih})`.
fn branch_slope(f: &NumericSemiholo, u: Complex64, rho: f64, h: f64) -> (Complex64, Complex64) {
    let e = Complex64::from_polar(1.0, h);
    let val = f.eval_with_partials(u, v_at(rho, h));
    let d_rho = val.dv * e + val.dvb * e.conj();
    (-d_rho / val.du, val.du)
}

fn newton(f: &NumericSemiholo, mut u: Complex64, v: Complex64) -> Option<Complex64> {
    for _ in 0..12 {
        let val = f.eval_with_partials(u, v);
        if val.du.norm() == 0.0 {
            return None;
        }
        let step = val.f / val.du;
        u -= step;
        if step.norm() <= 1e-14 * (1.0 + u.norm()) {
            return Some(u);
        }
    }
    let val = f.eval_with_partials(u, v);
    let coeffs = f.u_coefficients(v);
    (val.f.norm() <= 1e-12 * magnitude(&coeffs, u)).then_some(u)
}

fn sphere_gap(u: Complex64, rho: f64) -> f64 {
    u.norm_sqr() + rho * rho - 1.0
}

/// Intersection of a branch with the sphere, bracketed by `[lo, hi]` in `ρ`, with `u_hi`
/// the branch value at `hi`.
fn bisect(f: &NumericSemiholo, h: f64, mut lo: f64, mut hi: f64, mut u_hi: Complex64) -> Option<Complex64> {
    let g_hi = sphere_gap(u_hi, hi);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let (slope, _) = branch_slope(f, u_hi, hi, h);
        let u_mid = newton(f, u_hi + slope * (mid - hi), v_at(mid, h))?;
        if (sphere_gap(u_mid, mid) > 0.0) == (g_hi > 0.0) {
            hi = mid;
            u_hi = u_mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Some(u_hi)
}

/// Points `u` with `f(u, ρe^{ih}) = 0` and `|u|² + ρ² = 1`.
pub fn sphere_roots(f: &NumericSemiholo, h: f64, opts: &VerifyOptions) -> Result<Vec<Complex64>, VerifyError> {
    let mut u = find_roots(&f.u_coefficients(v_at(1.0, h)))?;
    let s = u.len();
    let mut rho = 1.0;
    let mut step = 1.0 / opts.rho_steps as f64;
    let mut found = Vec::with_capacity(s);
    while rho > 0.0 {
        let next_rho = (rho - step).max(0.0);
        let v = v_at(next_rho, h);
        let sep = min_sep(&u);
        let mut next = Vec::with_capacity(s);
        let mut ok = true;
        for &z in &u {
            let (slope, _) = branch_slope(f, z, rho, h);
            let guess = z + slope * (next_rho - rho);
            match newton(f, guess, v) {
                Some(w) if (w - guess).norm() < 0.1 * sep && (w - z).norm() < 0.3 * sep => next.push(w),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok || min_sep(&next) < 0.3 * sep {
            step *= 0.5;
            if step < 1e-9 {
                // branches merge; acceptable only if no root can reach the sphere below here
                if stays_inside(f, h, rho, opts)? {
                    break;
                }
                return Err(VerifyError::NotTransverse { h, measure: 0.0 });
            }
            continue;
        }
        for (&z0, &z1) in u.iter().zip(&next) {
            if (sphere_gap(z0, rho) > 0.0) != (sphere_gap(z1, next_rho) > 0.0) {
                found.push(bisect(f, h, next_rho, rho, z0).ok_or(VerifyError::NotTransverse { h, measure: 0.0 })?);
            }
        }
        u = next;
        rho = next_rho;
        step = (step * 1.5).min(1.0 / opts.rho_steps as f64);
    }
    if found.len() != s {
        return Err(VerifyError::WrongRootCount { h, expected: s, found: found.len() });
    }
    Ok(found)
}

/// True when every root of `f(·, ρ'e^{ih})` stays strictly inside the sphere for
/// `ρ' ∈ [0, ρ]`, sampled on a fine grid.
fn stays_inside(f: &NumericSemiholo, h: f64, rho: f64, opts: &VerifyOptions) -> Result<bool, VerifyError> {
    let samples = 8 * opts.rho_steps;
    for k in 0..=samples {
        let r = rho * k as f64 / samples as f64;
        let roots = find_roots(&f.u_coefficients(v_at(r, h)))?;
        if roots.iter().any(|&u| sphere_gap(u, r) > -0.01) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn min_sep(row: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for a in 0..row.len() {
        for b in a + 1..row.len() {
            best = best.min((row[a] - row[b]).norm());
        }
    }
    if best.is_finite() {
        best
    } else {
        1.0
    }
}

/// Certifies that `f = 0` meets `S³` in a closed braid on `deg_u f` strands, transversally.
pub fn verify_nodal_on_sphere(f: &NumericSemiholo, opts: &VerifyOptions) -> Result<NodalCertificate, VerifyError> {
    let track = track_samples(|h| sphere_roots(f, h, opts), opts)?;
    let word = recover_braid_word(&track)?;

    let mut min_transversality = f64::INFINITY;
    let mut min_sphere_angle = f64::INFINITY;
    let mut max_residual: f64 = 0.0;
    for (&h, row) in track.h_grid.iter().zip(&track.roots) {
        for &u in row {
            let rho = (1.0 - u.norm_sqr()).max(0.0).sqrt();
            let v = v_at(rho, h);
            let coeffs = f.u_coefficients(v);
            let scale = coeffs.iter().rev().fold(0.0, |acc, c| acc * u.norm().max(1.0) + c.norm());
            let (slope, du) = branch_slope(f, u, rho, h);
            min_transversality = min_transversality.min(du.norm() / scale);
            min_sphere_angle = min_sphere_angle.min((2.0 * (u.conj() * slope).re + 2.0 * rho).abs());
            max_residual = max_residual.max(f.eval(u, v).norm() / magnitude(&coeffs, u));
        }
    }
    if min_transversality < opts.transversality {
        return Err(VerifyError::NotTransverse { h: f64::NAN, measure: min_transversality });
    }
    if min_sphere_angle < opts.transversality {
        return Err(VerifyError::NotTransverse { h: f64::NAN, measure: min_sphere_angle });
    }

    let steps = track.steps();
    let mono = track.monodromy();
    let gap = (0..track.strands()).map(|j| (track.roots[steps][j] - track.roots[0][mono[j]]).norm()).fold(0.0, f64::max);
    if gap > opts.closure {
        return Err(VerifyError::OpenCurve { gap });
    }
    let curves = track
        .cycles()
        .into_iter()
        .map(|cycle| {
            let mut points = Vec::with_capacity(cycle.len() * steps);
            for j in cycle {
                for k in 0..steps {
                    let u = track.roots[k][j];
                    let v = v_at((1.0 - u.norm_sqr()).max(0.0).sqrt(), track.h_grid[k]);
                    points.push(vec![u.re, u.im, v.re, v.im]);
                }
            }
            NodalCurve { points, closed: true, residual: max_residual }
        })
        .collect();
    Ok(NodalCertificate { track, word, curves, min_transversality, min_sphere_angle, max_residual })
}

/// Zero set of `F` on the sphere of radius `ρ`, with regularity of every intersection point.
#[derive(Clone, Debug)]
pub struct MilnorCertificate {
    pub radius: f64,
    pub nodal: NodalCertificate,
    /// Smallest singular value of the row-normalised `[∇Re F; ∇Im F; x/|x|]` over the curve.
    pub min_regularity: f64,
}

pub fn verify_milnor_sphere(poly: &RealPolynomial4, radius: f64, opts: &VerifyOptions) -> Result<MilnorCertificate, VerifyError> {
    if radius <= 0.0 {
        return Err(VerifyError::InvalidInput(format!("sphere radius must be positive, got {radius}")));
    }
    let on_sphere = NumericSemiholo::from_terms(&poly.on_sphere(radius));
    let nodal = verify_nodal_on_sphere(&on_sphere, opts)?;
    let mut min_regularity = f64::INFINITY;
    for p in nodal.points() {
        let x = p.map(|c| c * radius);
        let [gr, gi] = poly.gradient(&x);
        let rows = [gr, gi, p];
        let mut m = Matrix3x4::<f64>::zeros();
        for (i, row) in rows.iter().enumerate() {
            let norm = row.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err(VerifyError::NotTransverse { h: f64::NAN, measure: 0.0 });
            }
            for j in 0..4 {
                m[(i, j)] = row[j] / norm;
            }
        }
        let sv = m.svd(false, false).singular_values;
        min_regularity = min_regularity.min(sv.min());
    }
    if min_regularity < opts.transversality {
        return Err(VerifyError::NotTransverse { h: f64::NAN, measure: min_regularity });
    }
    Ok(MilnorCertificate { radius, nodal, min_regularity })
}
