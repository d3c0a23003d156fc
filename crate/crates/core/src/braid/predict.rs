//! Invariant predictions for spiral closures and the bundled knot-table fixtures.

use num_integer::Integer;
use serde::Serialize;

use super::spec::LemniscateSpec;
use super::word::{crossing_signs, EpsilonVector};
use super::BraidError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenusPrediction {
    Exact {
        genus: u32,
    },
    /// Lower bound comes from the Alexander polynomial and is not known here.
    UpperBound {
        genus_upper: u32,
    },
    /// Links have no single genus prediction here.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CrossingPrediction {
    Exact {
        crossings: u32,
    },
    /// `lower_exclusive < c ≤ upper`.
    Bounds {
        lower_exclusive: u32,
        upper: u32,
    },
    Unknown,
}

/// Alexander polynomial congruence `Δ ≡ (1 + … + t^{s-1})^{r-1} (mod p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlexanderModP {
    pub p: u64,
    /// Coefficients of `(1 + … + t^{s-1})^{r-1}` reduced mod `p`, lowest degree first.
    pub pattern: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpiralPrediction {
    pub component_count: u32,
    pub is_knot: bool,
    pub is_unknot: bool,
    pub period: u32,
    pub is_fibred: bool,
    pub alexander_mod_p: Option<AlexanderModP>,
    pub genus: GenusPrediction,
    pub crossings: CrossingPrediction,
    /// `(r-1)(s+ℓ-1)`; an unproven guess, never asserted.
    pub conjectural_crossings: u32,
    pub braid_index: Option<u32>,
    pub tangle: Option<Vec<i64>>,
    pub tangle_reduced: Option<Vec<i64>>,
    pub epsilon: Vec<i8>,
}

/// `Some((p, k))` with `r = p^k`, `k ≥ 1`.
pub fn prime_power(r: u32) -> Option<(u32, u32)> {
    if r < 2 {
        return None;
    }
    let p = (2..=r).find(|d| r.is_multiple_of(*d))?;
    let mut rest = r;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn repunit_power_mod(s: u32, e: u32, p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    for _ in 0..e {
        let mut next = vec![0u64; acc.len() + s as usize - 1];
        for (i, c) in acc.iter().enumerate() {
            for j in 0..s as usize {
                next[i + j] = (next[i + j] + c) % p;
            }
        }
        acc = next;
    }
    acc
}

/// Conway notation of an `r = 2` spiral closure from its sign blocks. A single block
/// is the two-strand torus tangle `[ε s]`.
pub fn tangle_notation(eps: &EpsilonVector, r: u32) -> Result<Vec<i64>, BraidError> {
    if r != 2 {
        return Err(BraidError::WrongPeriod(r));
    }
    let blocks = eps.blocks();
    let e = *eps.signs.first().unwrap_or(&1) as i64;
    if blocks.len() <= 1 {
        return Ok(vec![e * (eps.signs.len() as i64 + 1)]);
    }
    let last = blocks.len() - 1;
    let mut out = vec![e * blocks[0] as i64];
    for (i, n) in blocks.iter().enumerate().skip(1) {
        out.push(e);
        out.push(e);
        out.push(if i == last { e * *n as i64 } else { e * (*n as i64 - 1) });
    }
    Ok(out)
}

/// Absorbs unit end entries into their neighbours (`[…, a, ±1] → […, a ± 1]`, and the
/// same at the front, which reverses the fraction but not the closure).
pub fn reduce_tangle(t: &[i64]) -> Vec<i64> {
    let mut v = t.to_vec();
    loop {
        if v.len() >= 2 && v[v.len() - 1].abs() == 1 && v[v.len() - 1].signum() == v[v.len() - 2].signum() {
            let x = v.pop().unwrap();
            *v.last_mut().unwrap() += x;
        } else if v.len() >= 2 && v[0].abs() == 1 && v[0].signum() == v[1].signum() {
            let x = v.remove(0);
            v[0] += x;
        } else {
            return v;
        }
    }
}

pub fn spiral_predictions(spec: &LemniscateSpec) -> SpiralPrediction {
    let (s, r, l) = (spec.s, spec.r, spec.l);
    let m = s.gcd(&r);
    let is_knot = m == 1;
    let eps = crossing_signs(spec);
    let pp = prime_power(r);
    let genus_bound = (s - 1) * (r - 1) / 2;
    let genus = if !is_knot {
        GenusPrediction::Unknown
    } else if pp.is_some() || r == 1 {
        GenusPrediction::Exact { genus: genus_bound }
    } else {
        GenusPrediction::UpperBound { genus_upper: genus_bound }
    };
    let crossings = if r == 2 {
        CrossingPrediction::Exact { crossings: s + l - 1 }
    } else if r == 1 && is_knot {
        CrossingPrediction::Exact { crossings: 0 }
    } else if pp.is_some() {
        CrossingPrediction::Bounds { lower_exclusive: (s - 1) * (r - 1), upper: (s - 1) * r }
    } else {
        CrossingPrediction::Unknown
    };
    let tangle = (r == 2).then(|| tangle_notation(&eps, r).expect("period 2"));
    let tangle_reduced = tangle.as_deref().map(reduce_tangle);
    SpiralPrediction {
        component_count: m,
        is_knot,
        is_unknot: r == 1 && is_knot,
        period: r,
        is_fibred: true,
        alexander_mod_p: match pp {
            Some((p, _)) if is_knot => Some(AlexanderModP { p: p as u64, pattern: repunit_power_mod(s, r - 1, p as u64) }),
            _ => None,
        },
        genus,
        crossings,
        conjectural_crossings: (r - 1) * (s + l - 1),
        braid_index: (r == 2 && is_knot).then_some(l + 1),
        tangle,
        tangle_reduced,
        epsilon: eps.signs,
    }
}

/// Row of the `ℓ = 2`, `r = 2` table: `s = 2n + 1`.
#[derive(Clone, Debug)]
pub struct FigureEightFamilyRow {
    pub s: u32,
    pub knot: &'static str,
    /// Absolute values, as listed.
    pub tangle: &'static [i64],
    /// Absolute Jones coefficients for `t^{-n-1} … 1`.
    pub jones_abs: &'static [u32],
}

pub const FIGURE_EIGHT_FAMILY: &[FigureEightFamilyRow] = &[
    FigureEightFamilyRow { s: 3, knot: "4_1", tangle: &[2, 2], jones_abs: &[1, 1, 1] },
    FigureEightFamilyRow { s: 5, knot: "6_3", tangle: &[2, 1, 1, 2], jones_abs: &[1, 2, 2, 3] },
    FigureEightFamilyRow { s: 7, knot: "8_9", tangle: &[3, 1, 1, 3], jones_abs: &[1, 2, 3, 4, 5] },
    FigureEightFamilyRow { s: 9, knot: "10_17", tangle: &[4, 1, 1, 4], jones_abs: &[1, 2, 3, 5, 6, 7] },
    FigureEightFamilyRow { s: 11, knot: "K12a_1273", tangle: &[5, 1, 1, 5], jones_abs: &[1, 2, 3, 5, 7, 8, 9] },
    FigureEightFamilyRow { s: 13, knot: "K14a_19298", tangle: &[6, 1, 1, 6], jones_abs: &[1, 2, 3, 5, 7, 9, 10, 11] },
];

/// Row of the `ℓ = 3`, `r = 2` table (positive `b`).
#[derive(Clone, Debug)]
pub struct ThreeLobeRow {
    pub s: u32,
    pub knot: &'static str,
    pub jones_abs: &'static [u32],
}

pub const THREE_LOBE_FAMILY: &[ThreeLobeRow] = &[
    ThreeLobeRow { s: 4, knot: "L6a_1", jones_abs: &[1, 2, 2, 2, 3, 1, 1] },
    ThreeLobeRow { s: 5, knot: "7_7", jones_abs: &[1, 2, 3, 4, 4, 3, 3, 1] },
    ThreeLobeRow { s: 7, knot: "9_31", jones_abs: &[1, 4, 6, 8, 10, 9, 8, 5, 3, 1] },
    ThreeLobeRow { s: 8, knot: "L10a_91", jones_abs: &[1, 4, 7, 10, 13, 13, 9, 3, 1] },
    ThreeLobeRow { s: 10, knot: "L12_??", jones_abs: &[1, 4, 9, 15, 22, 28, 30, 29, 25, 18, 12, 6, 3, 1] },
    ThreeLobeRow { s: 11, knot: "13a_4296", jones_abs: &[1, 4, 9, 17, 26, 36, 43, 45, 44, 37, 29, 20, 12, 6, 3, 1] },
];

/// Minimal words found for `L(s, 2, 3)` at small `s`. These are conjectured to follow a
/// pattern; shipped as data only.
pub const THREE_LOBE_MINIMAL_WORDS: &[(u32, &[i32])] =
    &[(4, &[1, -2, 1, 3, -2, 3]), (5, &[1, -2, 1, -2, 3, -2, 3]), (7, &[1, 1, -2, 1, -2, 3, -2, 3, 3])];
