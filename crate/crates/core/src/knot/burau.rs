use super::poly::IntLaurentPoly;
use crate::braid::BraidWord;

/// Unreduced Burau matrix over `ℤ[t, t⁻¹]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurauMatrix {
    rows: Vec<Vec<IntLaurentPoly>>,
}

impl BurauMatrix {
    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| if i == j { IntLaurentPoly::one() } else { IntLaurentPoly::zero() }).collect()).collect();
        Self { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &IntLaurentPoly {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<IntLaurentPoly>] {
        &self.rows
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.size();
        let mut rows = vec![vec![IntLaurentPoly::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (k, a) in self.rows[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, cell) in row.iter_mut().enumerate() {
                    let b = &other.rows[k][j];
                    if !b.is_zero() {
                        *cell = cell.add(&a.mul(b));
                    }
                }
            }
        }
        Self { rows }
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> Self {
        let mut m = self.clone();
        for i in 0..m.size() {
            m.rows[i][i] = m.rows[i][i].sub(&IntLaurentPoly::one());
        }
        m
    }

    /// Leading principal `(n-1)×(n-1)` block: last row and column deleted.
    pub fn drop_last(&self) -> Self {
        let n = self.size() - 1;
        Self { rows: self.rows[..n].iter().map(|r| r[..n].to_vec()).collect() }
    }

    /// Fraction-free (Bareiss) elimination with exact division in `ℤ[t, t⁻¹]`.
    pub fn determinant(&self) -> IntLaurentPoly {
        let n = self.size();
        if n == 0 {
            return IntLaurentPoly::one();
        }
        let mut m = self.rows.clone();
        let mut sign = false;
        let mut prev = IntLaurentPoly::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return IntLaurentPoly::zero();
                };
                m.swap(k, p);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
                m[i][k] = IntLaurentPoly::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign {
            det.neg()
        } else {
            det
        }
    }
}

/// Identity except the block at rows/columns `k, k+1` (1-based):
/// `[[1-t, t], [1, 0]]`, or its inverse `[[0, 1], [t⁻¹, 1-t⁻¹]]`.
pub fn burau_of_letter(k: usize, positive: bool, strands: usize) -> BurauMatrix {
    assert!(k >= 1 && k < strands, "generator {k} out of range for {strands} strands");
    let mut m = BurauMatrix::identity(strands);
    let (i, j) = (k - 1, k);
    let one = IntLaurentPoly::one();
    let t = IntLaurentPoly::t();
    if positive {
        m.rows[i][i] = one.sub(&t);
        m.rows[i][j] = t;
        m.rows[j][i] = one;
        m.rows[j][j] = IntLaurentPoly::zero();
    } else {
        let t_inv = IntLaurentPoly::monomial(-1, 1);
        m.rows[i][i] = IntLaurentPoly::zero();
        m.rows[i][j] = one.clone();
        m.rows[j][i] = t_inv.clone();
        m.rows[j][j] = one.sub(&t_inv);
    }
    m
}

pub fn burau_of_word(word: &BraidWord) -> BurauMatrix {
    let n = word.strands() as usize;
    word.letters().iter().fold(BurauMatrix::identity(n), |acc, &l| acc.mul(&burau_of_letter(l.unsigned_abs() as usize, l > 0, n)))
}
