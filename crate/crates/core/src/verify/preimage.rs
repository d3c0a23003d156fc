//! Preimages of points of `S²` under a hopfion field, traced as closed loops in ℝ³.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;

use serde::Serialize;

use super::linking::{total_linking, LinkingResult};
use super::{NodalCurve, VerifyError};
use crate::field::hopfion::HopfionField;

#[derive(Clone, Copy, Debug)]
pub struct PreimageOptions {
    /// Grid cells per axis for the seed scan.
    pub grid: usize,
    /// Half-width of the cubic box.
    pub half_width: f64,
    /// Arc-length step as a fraction of the grid cell.
    pub step_fraction: f64,
    pub max_steps: usize,
    /// Smallest relative `|∇Re G × ∇Im G|` accepted along a curve.
    pub regularity: f64,
}

impl Default for PreimageOptions {
    fn default() -> Self {
        Self { grid: 96, half_width: 6.0, step_fraction: 0.04, max_steps: 400_000, regularity: 1e-9 }
    }
}

type P3 = [f64; 3];

fn add(a: P3, b: P3, k: f64) -> P3 {
    [a[0] + k * b[0], a[1] + k * b[1], a[2] + k * b[2]]
}

fn dist2(a: P3, b: P3) -> f64 {
    (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)
}

struct Tracer<'a, G: Fn(P3) -> Complex64> {
    g: &'a G,
    fd: f64,
}

impl<G: Fn(P3) -> Complex64> Tracer<'_, G> {
    /// Columns `∂_k G` by central differences.
    fn jacobian(&self, p: P3) -> [Complex64; 3] {
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for (k, col) in out.iter_mut().enumerate() {
            let mut a = p;
            let mut b = p;
            a[k] += self.fd;
            b[k] -= self.fd;
            *col = ((self.g)(a) - (self.g)(b)) / (2.0 * self.fd);
        }
        out
    }

    /// `∇Re G × ∇Im G` and its length relative to `|∇Re G||∇Im G|`.
    fn tangent(&self, p: P3) -> (P3, f64) {
        let j = self.jacobian(p);
        let a = [j[0].re, j[1].re, j[2].re];
        let b = [j[0].im, j[1].im, j[2].im];
        let t = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
        let n = (t[0] * t[0] + t[1] * t[1] + t[2] * t[2]).sqrt();
        let scale = (a.iter().map(|x| x * x).sum::<f64>() * b.iter().map(|x| x * x).sum::<f64>()).sqrt();
        if n == 0.0 {
            return ([0.0; 3], 0.0);
        }
        ([t[0] / n, t[1] / n, t[2] / n], n / scale)
    }

    /// Minimum-norm Newton onto `G = 0`.
    fn correct(&self, mut p: P3) -> Option<P3> {
        for _ in 0..30 {
            let g = (self.g)(p);
            let j = self.jacobian(p);
            let a = [j[0].re, j[1].re, j[2].re];
            let b = [j[0].im, j[1].im, j[2].im];
            let (aa, ab, bb) = (
                a.iter().map(|x| x * x).sum::<f64>(),
                a.iter().zip(&b).map(|(x, y)| x * y).sum::<f64>(),
                b.iter().map(|x| x * x).sum::<f64>(),
            );
            let det = aa * bb - ab * ab;
            if det.abs() <= 1e-300 {
                return None;
            }
            // (J Jᵀ)⁻¹ g
            let y0 = (bb * g.re - ab * g.im) / det;
            let y1 = (aa * g.im - ab * g.re) / det;
            let delta = [y0 * a[0] + y1 * b[0], y0 * a[1] + y1 * b[1], y0 * a[2] + y1 * b[2]];
            p = add(p, delta, -1.0);
            if delta.iter().map(|x| x * x).sum::<f64>().sqrt() < 1e-11 {
                return Some(p);
            }
        }
        None
    }
}

fn winding(vals: [Complex64; 4]) -> i32 {
    let mut total = 0.0;
    for k in 0..4 {
        let mut d = vals[(k + 1) % 4].arg() - vals[k].arg();
        if d > PI {
            d -= TAU;
        } else if d < -PI {
            d += TAU;
        }
        total += d;
    }
    (total / TAU).round() as i32
}

/// Face centres of grid squares around which `arg G` winds.
fn seeds<G: Fn(P3) -> Complex64 + Sync>(g: &G, opts: &PreimageOptions) -> Vec<P3> {
    let n = opts.grid;
    let h = 2.0 * opts.half_width / n as f64;
    let coord = |i: usize| -opts.half_width + h * i as f64;
    let m = n + 1;
    let values: Vec<Complex64> = (0..m * m * m)
        .into_par_iter()
        .map(|idx| {
            let (i, j, k) = (idx / (m * m), (idx / m) % m, idx % m);
            g([coord(i), coord(j), coord(k)])
        })
        .collect();
    let at = |i: usize, j: usize, k: usize| values[(i * m + j) * m + k];
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                // faces normal to z, y, x with lower corner (i, j, k)
                if i < n && j < n && winding([at(i, j, k), at(i + 1, j, k), at(i + 1, j + 1, k), at(i, j + 1, k)]) != 0 {
                    out.push([coord(i) + h / 2.0, coord(j) + h / 2.0, coord(k)]);
                }
                if i < n && k < n && winding([at(i, j, k), at(i + 1, j, k), at(i + 1, j, k + 1), at(i, j, k + 1)]) != 0 {
                    out.push([coord(i) + h / 2.0, coord(j), coord(k) + h / 2.0]);
                }
                if j < n && k < n && winding([at(i, j, k), at(i, j + 1, k), at(i, j + 1, k + 1), at(i, j, k + 1)]) != 0 {
                    out.push([coord(i), coord(j) + h / 2.0, coord(k) + h / 2.0]);
                }
            }
        }
    }
    out
}

struct PointIndex {
    cell: f64,
    cells: HashMap<[i64; 3], Vec<P3>>,
}

impl PointIndex {
    fn key(&self, p: P3) -> [i64; 3] {
        p.map(|x| (x / self.cell).floor() as i64)
    }

    fn insert(&mut self, p: P3) {
        let k = self.key(p);
        self.cells.entry(k).or_default().push(p);
    }

    fn near(&self, p: P3, radius: f64) -> bool {
        let c = self.key(p);
        let r2 = radius * radius;
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    if let Some(pts) = self.cells.get(&[c[0] + dx, c[1] + dy, c[2] + dz]) {
                        if pts.iter().any(|q| dist2(p, *q) < r2) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

/// Traces `G = 0` from a point on it until the loop closes.
fn trace_loop<G: Fn(P3) -> Complex64>(tracer: &Tracer<G>, start: P3, step: f64, opts: &PreimageOptions) -> Result<NodalCurve, VerifyError> {
    let mut points = vec![start];
    let mut p = start;
    let mut min_regular = f64::INFINITY;
    let mut travelled = 0.0;
    for _ in 0..opts.max_steps {
        let (t, reg) = tracer.tangent(p);
        min_regular = min_regular.min(reg);
        if reg < opts.regularity {
            return Err(VerifyError::NotTransverse { h: f64::NAN, measure: reg });
        }
        let mut ds = step;
        let next = loop {
            let predicted = add(p, t, ds);
            match tracer.correct(predicted) {
                Some(q)
                    if dist2(q, predicted).sqrt() < 0.5 * ds
                        && tracer.tangent(q).0.iter().zip(&t).map(|(a, b)| a * b).sum::<f64>() > 0.5 =>
                {
                    break q;
                }
                _ => {
                    ds *= 0.5;
                    if ds < 1e-6 * step {
                        return Err(VerifyError::OpenCurve { gap: f64::NAN });
                    }
                }
            }
        };
        travelled += dist2(next, p).sqrt();
        p = next;
        if p.iter().any(|x| x.abs() > opts.half_width) {
            return Err(VerifyError::OpenCurve { gap: f64::INFINITY });
        }
        if travelled > 4.0 * step && dist2(p, start).sqrt() < 0.75 * step {
            let residual = points.iter().map(|&q| (tracer.g)(q).norm()).fold(0.0, f64::max);
            return Ok(NodalCurve { points: points.into_iter().map(|q| q.to_vec()).collect(), closed: true, residual });
        }
        points.push(p);
    }
    Err(VerifyError::OpenCurve { gap: dist2(p, start).sqrt() })
}

/// All loops of `φ⁻¹(target)` inside the box, oriented by `∇Re G × ∇Im G` for
/// `G = c v^N - W_target f^m` (or `f` at the south pole).
pub fn trace_preimage(field: &HopfionField, target: [f64; 3], opts: &PreimageOptions) -> Result<Vec<NodalCurve>, VerifyError> {
    let g = field.preimage_function(target);
    let cell = 2.0 * opts.half_width / opts.grid as f64;
    let step = opts.step_fraction * cell;
    let tracer = Tracer { g: &g, fd: 1e-6 };
    let mut index = PointIndex { cell: 2.0 * cell, cells: HashMap::new() };
    let mut curves = Vec::new();
    for seed in seeds(&g, opts) {
        if index.near(seed, 2.0 * cell) {
            continue;
        }
        let Some(start) = tracer.correct(seed) else { continue };
        if dist2(start, seed).sqrt() > cell || index.near(start, 2.0 * step) {
            continue;
        }
        let curve = trace_loop(&tracer, start, step, opts)?;
        for p in &curve.points {
            index.insert([p[0], p[1], p[2]]);
        }
        curves.push(curve);
    }
    Ok(curves)
}

/// Hopf charge measured from two preimages.
///
/// The map `(x, y, z) ↦ (u, v)` reverses orientation with respect to the complex
/// orientation of `S³ ⊂ ℂ²` (its Jacobian at the origin sends `(∂x, ∂y, ∂z)` to
/// `(∂Re v, ∂Im v, ∂Im u)`, a negative frame next to the outward normal `-∂Re u`), so the
/// charge is the Gauss linking number in right-handed `ℝ³` with the sign reversed.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HopfCharge {
    pub targets: [[f64; 3]; 2],
    pub loops: [usize; 2],
    /// Gauss linking in right-handed ℝ³.
    pub linking: LinkingResult,
    pub charge: i64,
    pub raw_charge: f64,
}

pub fn hopf_charge(
    field: &HopfionField,
    a: [f64; 3],
    b: [f64; 3],
    opts: &PreimageOptions,
) -> Result<(HopfCharge, [Vec<NodalCurve>; 2]), VerifyError> {
    let ca = trace_preimage(field, a, opts)?;
    let cb = trace_preimage(field, b, opts)?;
    let linking = total_linking(&ca, &cb)?;
    let charge = HopfCharge {
        targets: [a, b],
        loops: [ca.len(), cb.len()],
        charge: -linking.linking_number,
        raw_charge: -linking.raw_integral,
        linking,
    };
    Ok((charge, [ca, cb]))
}
