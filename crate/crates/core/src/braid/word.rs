use std::fmt;

use serde_json::Value;

use super::spec::LemniscateSpec;
use super::BraidError;

/// A word in the Artin generators; letter `k` is `σ_k`, letter `-k` is `σ_k⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<i32>) -> Result<Self, BraidError> {
        for &l in &letters {
            if l == 0 || l.unsigned_abs() >= strands {
                return Err(BraidError::InvalidGenerator { letter: l, strands });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: u32) -> Self {
        Self { strands, letters: Vec::new() }
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// Every crossing flipped.
    pub fn mirror(&self) -> Self {
        Self { strands: self.strands, letters: self.letters.iter().map(|l| -l).collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        assert_eq!(self.strands, other.strands, "concatenating braids on different strand counts");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { strands: self.strands, letters }
    }

    /// `self^n`; negative powers use the inverse.
    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Self { strands: self.strands, letters }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// Occurrences of each generator `σ_1 … σ_{s-1}` regardless of sign.
    pub fn generator_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.strands.saturating_sub(1) as usize];
        for l in &self.letters {
            counts[l.unsigned_abs() as usize - 1] += 1;
        }
        counts
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.letters.iter().map(|&l| Value::from(l)).collect())
    }

    pub fn from_json(v: &Value, strands: u32) -> Result<Self, BraidError> {
        let list = v.as_array().ok_or_else(|| BraidError::InvalidSpec("braid word JSON must be a list".into()))?;
        let letters = list
            .iter()
            .map(|x| x.as_i64().and_then(|x| i32::try_from(x).ok()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| BraidError::InvalidSpec("braid word letters must be integers".into()))?;
        Self::new(strands, letters)
    }
}

impl fmt::Display for BraidWord {
    /// `s1^-1 s2 s1^-1 s2`; the empty word prints as `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *l > 0 {
                write!(f, "s{l}")?;
            } else {
                write!(f, "s{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

/// Strand permutation of a braid and the number of its cycles (closure components).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidPermutation {
    /// `image[i]` is the final position of the strand starting at position `i` (0-based).
    pub image: Vec<usize>,
    pub cycles: usize,
}

pub fn braid_permutation(word: &BraidWord) -> BraidPermutation {
    let n = word.strands as usize;
    // occupant[p] = strand currently at position p
    let mut occupant: Vec<usize> = (0..n).collect();
    for l in &word.letters {
        let k = l.unsigned_abs() as usize - 1;
        occupant.swap(k, k + 1);
    }
    let mut image = vec![0; n];
    for (pos, &strand) in occupant.iter().enumerate() {
        image[strand] = pos;
    }
    BraidPermutation::from_image(image)
}

impl BraidPermutation {
    pub fn from_image(image: Vec<usize>) -> Self {
        let n = image.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = image[i];
            }
        }
        Self { image, cycles }
    }
}

/// Signs `ε_1 … ε_{s-1}` of the basic lemniscate word and their constant-sign blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonVector {
    pub signs: Vec<i8>,
}

impl EpsilonVector {
    /// Lengths `n_1, …` of the maximal runs of equal sign.
    pub fn blocks(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        let mut prev = 0i8;
        for &e in &self.signs {
            if e == prev {
                *out.last_mut().unwrap() += 1;
            } else {
                out.push(1);
                prev = e;
            }
        }
        out
    }

    pub fn negated(&self) -> Self {
        Self { signs: self.signs.iter().map(|e| -e).collect() }
    }
}

/// `ε_{s-1} = sign(b)`, and going down, `ε_j = -ε_{j+1}` exactly when some integer
/// `m` has `j/s < m/ℓ < (j+1)/s`.
pub fn crossing_signs(spec: &LemniscateSpec) -> EpsilonVector {
    let s = spec.s as i64;
    let l = spec.l as i64;
    let n = (s - 1) as usize;
    let mut signs = vec![0i8; n];
    if n == 0 {
        return EpsilonVector { signs };
    }
    signs[n - 1] = if num_traits::Signed::is_negative(&spec.b) { -1 } else { 1 };
    for j in (1..s - 1).rev() {
        // integer m with j·ℓ < m·s < (j+1)·ℓ
        let flips = (j * l).div_euclid(s) < ((j + 1) * l - 1).div_euclid(s);
        let next = signs[j as usize];
        signs[j as usize - 1] = if flips { -next } else { next };
    }
    EpsilonVector { signs }
}

/// Basic word from signs: odd generators first, then even ones.
pub fn basic_word(strands: u32, eps: &EpsilonVector) -> BraidWord {
    let letters = (1..strands as i32)
        .filter(|k| k % 2 == 1)
        .chain((1..strands as i32).filter(|k| k % 2 == 0))
        .map(|k| k * eps.signs[k as usize - 1] as i32)
        .collect();
    BraidWord { strands, letters }
}

/// `w^{(s,r,ℓ)} = (w^{(s,1,ℓ)})^r`.
pub fn braid_word(spec: &LemniscateSpec) -> BraidWord {
    basic_word(spec.s, &crossing_signs(spec)).pow(spec.r as i64)
}

/// `Δ_s = (σ_1)(σ_2σ_1)…(σ_{s-1}…σ_1)`.
pub fn garside_element(strands: u32) -> BraidWord {
    let mut letters = Vec::new();
    for top in 1..strands as i32 {
        letters.extend((1..=top).rev());
    }
    BraidWord { strands, letters }
}

/// Word of the closure of a rotated lemniscate braid, `w Δ_s^{-2n}`.
pub fn rotating_word(spec: &LemniscateSpec, n: i64) -> BraidWord {
    braid_word(spec).concat(&garside_element(spec.s).pow(-2 * n))
}

/// `σ_1⁻¹ σ_2ⁿ σ_1⁻ⁿ σ_2`.
pub fn fig8_family_minimal_word(n: u32) -> BraidWord {
    let n = n as usize;
    let mut letters = vec![-1];
    letters.extend(std::iter::repeat_n(2, n));
    letters.extend(std::iter::repeat_n(-1, n));
    letters.push(2);
    BraidWord { strands: 3, letters }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: u32, r: u32, l: u32) -> LemniscateSpec {
        LemniscateSpec::new(s, r, l).unwrap()
    }

    #[test]
    fn sign_rule_examples() {
        assert_eq!(crossing_signs(&spec(5, 1, 1)).signs, vec![1, 1, 1, 1]);
        assert_eq!(crossing_signs(&spec(3, 2, 2)).signs, vec![-1, 1]);
        assert_eq!(crossing_signs(&spec(4, 2, 3)).signs, vec![1, -1, 1]);
        assert_eq!(crossing_signs(&spec(7, 2, 3)).signs, vec![1, 1, -1, -1, 1, 1]);
        assert_eq!(crossing_signs(&spec(7, 2, 3)).blocks(), vec![2, 2, 2]);
    }

    #[test]
    fn sign_symmetry_and_mirror() {
        for s in 2..=13u32 {
            for l in 1..=5u32.min(s - 1) {
                let Ok(sp) = LemniscateSpec::new(s, 2, l) else { continue };
                let e = crossing_signs(&sp);
                let n = e.signs.len();
                for j in 0..n {
                    let sym = if l % 2 == 1 { 1 } else { -1 };
                    assert_eq!(e.signs[j], sym * e.signs[n - 1 - j], "s={s} l={l}");
                }
                assert_eq!(crossing_signs(&sp.mirror()), e.negated());
                assert_eq!(e.blocks().len(), l as usize);
                assert_eq!(e.blocks().iter().sum::<usize>(), (s - 1) as usize);
            }
        }
    }

    #[test]
    fn basic_words() {
        assert_eq!(braid_word(&spec(3, 2, 2)).letters(), &[-1, 2, -1, 2]);
        assert_eq!(braid_word(&spec(2, 3, 1)).letters(), &[1, 1, 1]);
        assert_eq!(braid_word(&spec(4, 2, 3)).letters(), &[1, 3, -2, 1, 3, -2]);
    }

    #[test]
    fn isogram_structure_and_components() {
        for s in 2..=9u32 {
            for r in 1..=4u32 {
                for l in 1..s {
                    let Ok(sp) = LemniscateSpec::new(s, r, l) else { continue };
                    let w = braid_word(&sp);
                    assert!(w.generator_counts().iter().all(|&c| c == r as usize));
                    assert_eq!(braid_permutation(&w).cycles as u32, sp.components());
                }
            }
        }
    }

    #[test]
    fn permutations() {
        let p = braid_permutation(&BraidWord::new(2, vec![1]).unwrap());
        assert_eq!(p.image, vec![1, 0]);
        assert_eq!(p.cycles, 1);
        assert_eq!(braid_permutation(&braid_word(&spec(3, 2, 2))).cycles, 1);
        assert_eq!(braid_permutation(&braid_word(&spec(4, 2, 3))).cycles, 2);
    }

    #[test]
    fn garside() {
        assert_eq!(garside_element(2).letters(), &[1]);
        assert_eq!(garside_element(3).letters(), &[1, 2, 1]);
        for s in 2..10 {
            assert_eq!(garside_element(s).len() as u32, s * (s - 1) / 2);
        }
        let w = rotating_word(&spec(3, 2, 2), 1);
        assert_eq!(w.letters(), &[-1, 2, -1, 2, -1, -2, -1, -1, -2, -1]);
    }

    #[test]
    fn fig8_family() {
        assert_eq!(fig8_family_minimal_word(1).letters(), &[-1, 2, -1, 2]);
        assert_eq!(fig8_family_minimal_word(2).letters(), &[-1, 2, 2, -1, -1, 2]);
    }

    #[test]
    fn word_json_and_validation() {
        let w = BraidWord::new(3, vec![-1, 2]).unwrap();
        assert_eq!(w.to_json(), serde_json::json!([-1, 2]));
        assert_eq!(BraidWord::from_json(&w.to_json(), 3).unwrap(), w);
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert_eq!(w.to_string(), "s1^-1 s2");
        assert_eq!(w.pow(2).exponent_sum(), 0);
        assert_eq!(w.concat(&w.inverse()).exponent_sum(), 0);
    }
}
