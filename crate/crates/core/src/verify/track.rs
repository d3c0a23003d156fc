//! Continuous strand assignment over `h ∈ [0, 2π]` and braid-word recovery.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use super::roots::{find_roots, relative_residual};
use super::{VerifyError, VerifyOptions};
use crate::braid::{BraidPermutation, BraidWord, TrigStrand};
use crate::field::eval::NumericSemiholo;

/// Roots of the braid polynomial sampled on `h_k = (k + 1/2)·2π/N`, `k = 0..=N`.
///
/// `roots[k][j]` is strand `j` at `h_grid[k]`; the last row is the first one shifted by a
/// full period, so `roots[N]` is a permutation of `roots[0]`.
#[derive(Clone, Debug)]
pub struct RootTrack {
    pub h_grid: Vec<f64>,
    pub roots: Vec<Vec<Complex64>>,
    pub match_residual: Option<f64>,
}

impl RootTrack {
    pub fn strands(&self) -> usize {
        self.roots.first().map_or(0, Vec::len)
    }

    pub fn steps(&self) -> usize {
        self.h_grid.len() - 1
    }

    /// `image[j]`: the strand that starts where strand `j` ends.
    pub fn monodromy(&self) -> Vec<usize> {
        let first = &self.roots[0];
        self.roots[self.steps()]
            .iter()
            .map(|z| (0..first.len()).min_by(|&a, &b| (first[a] - z).norm().total_cmp(&(first[b] - z).norm())).expect("non-empty"))
            .collect()
    }

    /// Cycles of the monodromy, each listed from its smallest strand.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let image = self.monodromy();
        let mut seen = vec![false; image.len()];
        let mut out = Vec::new();
        for start in 0..image.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = image[j];
            }
            out.push(cycle);
        }
        out
    }

    pub fn components(&self) -> usize {
        self.cycles().len()
    }

    /// Monodromy in the layout of [`crate::braid::braid_permutation`], strands ordered by `Re` at the start.
    pub fn permutation(&self) -> BraidPermutation {
        let order = x_order(&self.roots[0]);
        let mut rank = vec![0; order.len()];
        for (pos, &j) in order.iter().enumerate() {
            rank[j] = pos;
        }
        let mono = self.monodromy();
        let mut image = vec![0; order.len()];
        for j in 0..order.len() {
            image[rank[j]] = rank[mono[j]];
        }
        BraidPermutation::from_image(image)
    }

    /// Largest distance from a tracked root to the nearest analytic strand `λ Z_j(h)`.
    pub fn with_match_residual(mut self, strands: &[TrigStrand], lambda: f64) -> Self {
        let worst = self
            .h_grid
            .iter()
            .zip(&self.roots)
            .flat_map(|(&h, row)| {
                let analytic: Vec<Complex64> = strands.iter().map(|z| z.eval(h) * lambda).collect();
                row.iter().map(move |r| analytic.iter().map(|a| (a - r).norm()).fold(f64::INFINITY, f64::min)).collect::<Vec<_>>()
            })
            .fold(0.0, f64::max);
        self.match_residual = Some(worst);
        self
    }
}

fn x_order(row: &[Complex64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..row.len()).collect();
    idx.sort_by(|&a, &b| row[a].re.total_cmp(&row[b].re));
    idx
}

fn min_separation(row: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for a in 0..row.len() {
        for b in a + 1..row.len() {
            best = best.min((row[a] - row[b]).norm());
        }
    }
    best
}

pub fn h_grid(steps: usize) -> Vec<f64> {
    (0..=steps).map(|k| (k as f64 + 0.5) * TAU / steps as f64).collect()
}

enum Assign {
    Done(Vec<Vec<Complex64>>),
    Refine,
}

/// Matches each row to the previous one; `Refine` when any root moves by more than a
/// quarter of the previous row's smallest separation.
fn assign(samples: Vec<Vec<Complex64>>, collision: f64) -> Result<Assign, VerifyError> {
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(samples.len());
    for (k, row) in samples.into_iter().enumerate() {
        let sep = min_separation(&row);
        if sep < collision {
            return Err(VerifyError::CollisionDetected { step: k, distance: sep });
        }
        let Some(prev) = out.last() else {
            out.push(row);
            continue;
        };
        if row.len() != prev.len() {
            return Err(VerifyError::WrongRootCount { h: f64::NAN, expected: prev.len(), found: row.len() });
        }
        let limit = 0.25 * min_separation(prev);
        let mut used = vec![false; row.len()];
        let mut next = Vec::with_capacity(row.len());
        for p in prev {
            let (j, d) = row.iter().enumerate().map(|(j, z)| (j, (z - p).norm())).min_by(|a, b| a.1.total_cmp(&b.1)).expect("non-empty");
            if d >= limit || used[j] {
                return Ok(Assign::Refine);
            }
            used[j] = true;
            next.push(row[j]);
        }
        out.push(next);
    }
    Ok(Assign::Done(out))
}

/// Samples `sample(h)` on successively finer grids until consecutive rows can be matched
/// unambiguously.
pub fn track_samples<F>(sample: F, opts: &VerifyOptions) -> Result<RootTrack, VerifyError>
where
    F: Fn(f64) -> Result<Vec<Complex64>, VerifyError> + Sync,
{
    let mut steps = opts.h_steps.max(8);
    loop {
        let grid = h_grid(steps);
        let samples = grid.par_iter().map(|&h| sample(h)).collect::<Result<Vec<_>, _>>()?;
        match assign(samples, opts.collision)? {
            Assign::Done(roots) => return Ok(RootTrack { h_grid: grid, roots, match_residual: None }),
            Assign::Refine if steps < opts.max_h_steps => steps *= 2,
            Assign::Refine => return Err(VerifyError::Unresolved { steps }),
        }
    }
}

/// Roots of `f(·, e^{ih})` tracked over one period.
pub fn track_braid(f: &NumericSemiholo, opts: &VerifyOptions) -> Result<RootTrack, VerifyError> {
    track_samples(
        |h| {
            let coeffs = f.u_coefficients(Complex64::from_polar(1.0, h));
            let roots = find_roots(&coeffs)?;
            let res = relative_residual(&coeffs, &roots);
            if res > opts.root_residual {
                return Err(VerifyError::RootResidual { h, residual: res });
            }
            Ok(roots)
        },
        opts,
    )
}

struct Crossing {
    h: f64,
    a: usize,
    b: usize,
    /// `Im Z_a - Im Z_b` at the crossing.
    dy: f64,
}

/// Reads off the braid word: a crossing between `X`-adjacent strands at positions `k`, `k+1`
/// is `σ_k^{±1}`, positive when the strand arriving from the right passes above.
/// Crossings at the same `h` are ordered by generator index.
pub fn recover_braid_word(track: &RootTrack) -> Result<BraidWord, VerifyError> {
    let n = track.strands();
    let steps = track.steps();
    let dh = TAU / steps as f64;
    let mut events: Vec<Crossing> = Vec::new();
    for k in 0..steps {
        let (r0, r1) = (&track.roots[k], &track.roots[k + 1]);
        for a in 0..n {
            for b in a + 1..n {
                let d0 = r0[a].re - r0[b].re;
                let d1 = r1[a].re - r1[b].re;
                if (d0 < 0.0) == (d1 < 0.0) {
                    continue;
                }
                let t = d0 / (d0 - d1);
                let y0 = r0[a].im - r0[b].im;
                let y1 = r1[a].im - r1[b].im;
                let h = track.h_grid[k] + t * dh;
                events.push(Crossing { h, a, b, dy: y0 + t * (y1 - y0) });
            }
        }
    }
    // crossings past h = 2π happen just after h = 0; their strands continue backwards
    // into the first row under the monodromy
    let resolution = dh * 1e-6;
    let mono = track.monodromy();
    let mut all: Vec<Crossing> = events
        .into_iter()
        .map(|e| if e.h >= TAU - resolution { Crossing { h: (e.h - TAU).max(0.0), a: mono[e.a], b: mono[e.b], dy: e.dy } } else { e })
        .collect();
    all.sort_by(|x, y| x.h.total_cmp(&y.h));
    let first = track.h_grid[0];
    let mut pos = x_order(&track.roots[0]);
    for e in all.iter().rev().filter(|e| e.h < first) {
        let pa = pos.iter().position(|&x| x == e.a).expect("strand");
        let pb = pos.iter().position(|&x| x == e.b).expect("strand");
        if pa.abs_diff(pb) != 1 {
            return Err(VerifyError::AmbiguousCrossing { h: e.h });
        }
        pos.swap(pa, pb);
    }
    // A batch sitting exactly on h = 0 opens the word when its generators are odd and
    // closes it otherwise, so that odd generators lead as in the basic word.
    let boundary = all.iter().take_while(|e| e.h < resolution).count();
    let even = boundary > 0
        && all[..boundary].iter().all(|e| {
            let pa = pos.iter().position(|&x| x == e.a).expect("strand");
            let pb = pos.iter().position(|&x| x == e.b).expect("strand");
            pa.min(pb) % 2 == 1
        });
    if even {
        let mut inverse = vec![0; mono.len()];
        for (j, &m) in mono.iter().enumerate() {
            inverse[m] = j;
        }
        let moved: Vec<Crossing> = all.drain(..boundary).collect();
        for e in &moved {
            let pa = pos.iter().position(|&x| x == e.a).expect("strand");
            let pb = pos.iter().position(|&x| x == e.b).expect("strand");
            pos.swap(pa, pb);
        }
        all.extend(moved.into_iter().map(|e| Crossing { h: e.h + TAU, a: inverse[e.a], b: inverse[e.b], dy: e.dy }));
    }
    let mut letters = Vec::new();
    let mut i = 0;
    while i < all.len() {
        let mut j = i + 1;
        while j < all.len() && all[j].h - all[i].h < resolution {
            j += 1;
        }
        let mut batch: Vec<(usize, &Crossing)> = Vec::new();
        for e in &all[i..j] {
            let pa = pos.iter().position(|&x| x == e.a).expect("strand");
            let pb = pos.iter().position(|&x| x == e.b).expect("strand");
            if pa.abs_diff(pb) != 1 {
                return Err(VerifyError::AmbiguousCrossing { h: e.h });
            }
            batch.push((pa.min(pb), e));
        }
        batch.sort_by_key(|(g, _)| *g);
        for w in batch.windows(2) {
            if w[1].0 <= w[0].0 + 1 {
                return Err(VerifyError::AmbiguousCrossing { h: w[1].1.h });
            }
        }
        for (g, e) in batch {
            if e.dy.abs() < 1e-12 {
                return Err(VerifyError::AmbiguousCrossing { h: e.h });
            }
            let left = pos[g];
            let dy = if left == e.a { e.dy } else { -e.dy };
            // dy = Im(left) - Im(right)
            let sign = if dy < 0.0 { 1 } else { -1 };
            letters.push(sign * (g as i32 + 1));
            pos.swap(g, g + 1);
        }
        i = j;
    }
    BraidWord::new(n as u32, letters).map_err(|_| VerifyError::AmbiguousCrossing { h: f64::NAN })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{braid_word, lemniscate_strands, LemniscateSpec};
    use crate::field::build_field;

    fn numeric(spec: &LemniscateSpec) -> NumericSemiholo {
        NumericSemiholo::new(&build_field(spec).unwrap())
    }

    #[test]
    fn torus_trefoil() {
        let spec = LemniscateSpec::new(2, 3, 1).unwrap();
        let track = track_braid(&numeric(&spec), &VerifyOptions::default()).unwrap().with_match_residual(&lemniscate_strands(&spec), 1.0);
        assert!(track.match_residual.unwrap() < 1e-9);
        assert_eq!(recover_braid_word(&track).unwrap().letters(), &[1, 1, 1]);
        assert_eq!(track.components(), 1);
    }

    #[test]
    fn figure_eight_literal_word() {
        let spec = LemniscateSpec::new(3, 2, 2).unwrap();
        let track = track_braid(&numeric(&spec), &VerifyOptions::default()).unwrap();
        assert_eq!(recover_braid_word(&track).unwrap().letters(), &[-1, 2, -1, 2]);
    }

    #[test]
    fn three_lobe_link() {
        let spec = LemniscateSpec::new(4, 2, 3).unwrap();
        let track = track_braid(&numeric(&spec), &VerifyOptions::default()).unwrap();
        assert_eq!(recover_braid_word(&track).unwrap(), braid_word(&spec));
        assert_eq!(track.components(), 2);
    }
}
