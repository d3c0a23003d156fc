//! Scan of `|∇_{S³} arg f|` over quasi-random points of the unit sphere.

use std::collections::HashMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::field::eval::NumericSemiholo;

/// Minimum of `|∇_{S³} arg f|` over the samples that stay outside the tube.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FibrationReport {
    pub sample_count: usize,
    pub scanned: usize,
    pub min_grad_norm: f64,
    pub argmin: [f64; 4],
    pub margin_positive: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub samples: usize,
    pub tube: f64,
    pub tolerance: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { samples: 200_000, tube: 0.05, tolerance: 1e-4 }
    }
}

/// Point `k` of the additive recurrence with the generalized golden ratio in three
/// dimensions, pushed to `S³` through Hopf coordinates (uniform measure).
pub fn sphere_sample(k: usize) -> [f64; 4] {
    // real root of x⁴ = x + 1
    const G: f64 = 1.220_744_084_605_759_5;
    let alpha = [1.0 / G, 1.0 / (G * G), 1.0 / (G * G * G)];
    let t = alpha.map(|a| (0.5 + a * (k as f64 + 1.0)).fract());
    let eta = t[0].sqrt().asin();
    let (a, b) = (TAU * t[1], TAU * t[2]);
    [eta.cos() * a.cos(), eta.cos() * a.sin(), eta.sin() * b.cos(), eta.sin() * b.sin()]
}

/// `∇ arg f` in `ℝ⁴ = (Re u, Im u, Re v, Im v)`, projected onto the tangent space of `S³` at `p`.
pub fn sphere_arg_gradient(f: &NumericSemiholo, p: [f64; 4]) -> Option<[f64; 4]> {
    let u = Complex64::new(p[0], p[1]);
    let v = Complex64::new(p[2], p[3]);
    let val = f.eval_with_partials(u, v);
    if val.f.norm() == 0.0 {
        return None;
    }
    let a = val.du / val.f;
    let b = (val.dv + val.dvb) / val.f;
    let c = (val.dv - val.dvb) / val.f;
    let g = [a.im, a.re, b.im, c.re];
    let radial: f64 = (0..4).map(|i| g[i] * p[i]).sum();
    Some([0, 1, 2, 3].map(|i| g[i] - radial * p[i]))
}

/// Spatial hash of curve points for "within `δ`" queries in ℝ⁴.
struct Tube {
    delta: f64,
    cells: HashMap<[i64; 4], Vec<[f64; 4]>>,
}

impl Tube {
    fn new(points: impl IntoIterator<Item = [f64; 4]>, delta: f64) -> Self {
        let mut cells: HashMap<[i64; 4], Vec<[f64; 4]>> = HashMap::new();
        for p in points {
            cells.entry(Self::cell(p, delta)).or_default().push(p);
        }
        Self { delta, cells }
    }

    fn cell(p: [f64; 4], delta: f64) -> [i64; 4] {
        p.map(|x| (x / delta).floor() as i64)
    }

    fn contains(&self, p: [f64; 4]) -> bool {
        if self.delta <= 0.0 {
            return false;
        }
        let c = Self::cell(p, self.delta);
        let d2 = self.delta * self.delta;
        for off in 0..81 {
            let mut key = c;
            let mut o = off;
            for k in key.iter_mut() {
                *k += (o % 3) as i64 - 1;
                o /= 3;
            }
            if let Some(pts) = self.cells.get(&key) {
                if pts.iter().any(|q| (0..4).map(|i| (p[i] - q[i]).powi(2)).sum::<f64>() < d2) {
                    return true;
                }
            }
        }
        false
    }
}

/// Reports the smallest tangential `|∇ arg f|` outside the `δ`-tube around `nodal`.
///
/// Deterministic: the minimum is taken with ties broken by sample index.
pub fn fibration_scan(f: &NumericSemiholo, nodal: impl IntoIterator<Item = [f64; 4]>, opts: &ScanOptions) -> FibrationReport {
    let tube = Tube::new(nodal, opts.tube);
    let (scanned, best) = (0..opts.samples)
        .into_par_iter()
        .filter_map(|k| {
            let p = sphere_sample(k);
            if tube.contains(p) {
                return None;
            }
            let g = sphere_arg_gradient(f, p).unwrap_or([0.0; 4]);
            let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            Some((1usize, (norm, k)))
        })
        .reduce(
            || (0, (f64::INFINITY, usize::MAX)),
            |a, b| {
                let best = if b.1 < a.1 { b.1 } else { a.1 };
                (a.0 + b.0, best)
            },
        );
    let (min_grad_norm, argmin) = if best.1 == usize::MAX { (f64::INFINITY, [f64::NAN; 4]) } else { (best.0, sphere_sample(best.1)) };
    FibrationReport {
        sample_count: opts.samples,
        scanned,
        min_grad_norm,
        argmin,
        margin_positive: scanned > 0 && min_grad_norm > opts.tolerance,
    }
}
