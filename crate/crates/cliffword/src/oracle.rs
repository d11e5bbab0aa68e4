//! Exact integer realization of words as `2^m x 2^m` matrices, used as
//! ground truth for the letter-level rules.
//!
//! Every word realizes to a signed permutation matrix (each 2x2 factor is
//! one), so a matrix is stored as two length-`n` arrays: the target row of
//! each column's single nonzero entry and its sign. Products and
//! anticommutator checks are O(n) and exact.

use crate::error::{Error, Result};
use crate::word::{Character, Word, WordMatrix};

/// Default cap on word length for realizations (`n = 2^m`).
pub const DEFAULT_REALIZE_CAP: usize = 8;

/// A signed permutation matrix: column `j` has its only nonzero entry
/// `sign[j]` in row `target[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPermMatrix {
    target: Vec<u32>,
    sign: Vec<i8>,
}

// column action of the four 2x2 matrices: (target row, sign) per column
const FACTORS: [[(u32, i8); 2]; 4] = [
    [(0, 1), (1, 1)],   // I
    [(1, 1), (0, 1)],   // X = sigma_1 (off-diagonal +1)
    [(0, 1), (1, -1)],  // Z = sigma_2 (diag +1, -1)
    [(1, -1), (0, 1)],  // A (antisymmetric: column 0 -> -row 1)
];

impl SignedPermMatrix {
    pub fn identity(n: usize) -> SignedPermMatrix {
        SignedPermMatrix {
            target: (0..n as u32).collect(),
            sign: vec![1; n],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.target.len()
    }

    /// Entry at `(row, col)` as an integer in {-1, 0, 1}.
    pub fn entry(&self, row: usize, col: usize) -> i32 {
        if self.target[col] as usize == row {
            i32::from(self.sign[col])
        } else {
            0
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SignedPermMatrix) -> SignedPermMatrix {
        assert_eq!(self.dim(), other.dim());
        let n = self.dim();
        let mut target = vec![0u32; n];
        let mut sign = vec![0i8; n];
        for j in 0..n {
            let mid = other.target[j] as usize;
            target[j] = self.target[mid];
            sign[j] = other.sign[j] * self.sign[mid];
        }
        SignedPermMatrix { target, sign }
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &SignedPermMatrix) -> SignedPermMatrix {
        let (n1, n2) = (self.dim(), other.dim());
        let n = n1 * n2;
        let mut target = vec![0u32; n];
        let mut sign = vec![0i8; n];
        for j1 in 0..n1 {
            for j2 in 0..n2 {
                let j = j1 * n2 + j2;
                target[j] = self.target[j1] * n2 as u32 + other.target[j2];
                sign[j] = self.sign[j1] * other.sign[j2];
            }
        }
        SignedPermMatrix { target, sign }
    }

    /// If `self == s * identity`, returns `Some(s)`.
    pub fn as_scaled_identity(&self) -> Option<i8> {
        let s = self.sign[0];
        for j in 0..self.dim() {
            if self.target[j] as usize != j || self.sign[j] != s {
                return None;
            }
        }
        Some(s)
    }

    /// True iff `self * other + other * self == 0`.
    pub fn anticommutes(&self, other: &SignedPermMatrix) -> bool {
        let ab = self.mul(other);
        let ba = other.mul(self);
        ab.target == ba.target && ab.sign.iter().zip(&ba.sign).all(|(&x, &y)| x == -y)
    }
}

/// Realize a word as the tensor product of its letters' 2x2 matrices.
pub fn realize(w: Word) -> Result<SignedPermMatrix> {
    realize_capped(w, DEFAULT_REALIZE_CAP)
}

pub fn realize_capped(w: Word, cap: usize) -> Result<SignedPermMatrix> {
    let m = w.len();
    if m > cap {
        return Err(Error::CapExceeded { m, cap });
    }
    let letters: Vec<u8> = w.letters().map(Character::code).collect();
    let n = 1usize << m;
    let mut target = vec![0u32; n];
    let mut sign = vec![0i8; n];
    for j in 0..n {
        let mut t = 0u32;
        let mut s = 1i8;
        for (i, &code) in letters.iter().enumerate() {
            let bit = (j >> (m - 1 - i)) & 1;
            let (ft, fs) = FACTORS[code as usize][bit];
            t = (t << 1) | ft;
            s *= fs;
        }
        target[j] = t;
        sign[j] = s;
    }
    Ok(SignedPermMatrix { target, sign })
}

/// Check the gamma-basis relations on realizations:
/// `G_i G_j + G_j G_i = 2 eta_ij * 1` with `eta` from the row square signs.
pub fn check_clifford(matrix: &WordMatrix) -> Result<bool> {
    check_clifford_capped(matrix, DEFAULT_REALIZE_CAP)
}

pub fn check_clifford_capped(matrix: &WordMatrix, cap: usize) -> Result<bool> {
    let realizations = matrix
        .rows()
        .iter()
        .map(|&w| realize_capped(w, cap))
        .collect::<Result<Vec<_>>>()?;
    for (i, (gi, &wi)) in realizations.iter().zip(matrix.rows()).enumerate() {
        match gi.mul(gi).as_scaled_identity() {
            Some(s) if s == wi.square_sign() => {}
            _ => return Ok(false),
        }
        for gj in realizations.iter().skip(i + 1) {
            if !gi.anticommutes(gj) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
