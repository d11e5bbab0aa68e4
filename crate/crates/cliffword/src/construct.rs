//! Generative algorithms: one-step extension, the combine rule,
//! A-elimination, the cyclic family, the concatenation product and the
//! 4-character minimal-length formula.

use crate::error::{Error, Result};
use crate::word::{Character, Word, WordMatrix};

fn require_euclidean(matrix: &WordMatrix) -> Result<()> {
    matrix.verify()?;
    for (row, w) in matrix.rows().iter().enumerate() {
        if !w.is_euclidean_type() {
            return Err(Error::NonEuclidean { row });
        }
    }
    Ok(())
}

/// From a `(p,0)` basis of `m`-letter words, the `(p+1,0)` basis of
/// `(m+1)`-letter words `{w X for every row w} + {I..I Z}`.
pub fn extend_simple(matrix: &WordMatrix) -> Result<WordMatrix> {
    require_euclidean(matrix)?;
    let mut rows = matrix
        .rows()
        .iter()
        .map(|w| w.append(Character::X))
        .collect::<Result<Vec<_>>>()?;
    rows.push(Word::identity(matrix.m())?.append(Character::Z)?);
    WordMatrix::new(rows)
}

/// Input of the combine rule: three word sets of one common length such
/// that `A + B1` and `A + B2` are gamma bases and every `B1` word commutes
/// with every `B2` word. `A` may be empty; `B1` and `B2` may not.
#[derive(Debug, Clone)]
pub struct CombineInput {
    pub a: Vec<Word>,
    pub b1: Vec<Word>,
    pub b2: Vec<Word>,
}

impl CombineInput {
    pub fn new(a: Vec<Word>, b1: Vec<Word>, b2: Vec<Word>) -> CombineInput {
        CombineInput { a, b1, b2 }
    }

    fn validate(&self) -> Result<()> {
        if self.b1.is_empty() {
            return Err(Error::B1Empty);
        }
        if self.b2.is_empty() {
            return Err(Error::B2Empty);
        }
        let union = |other: &[Word]| -> Vec<Word> {
            self.a.iter().chain(other).copied().collect()
        };
        let check = |rows: Vec<Word>, which: &'static str| -> Result<()> {
            WordMatrix::new(rows)
                .and_then(|m| m.verify().map(|_| ()))
                .map_err(|e| Error::NotGammaBasis {
                    which,
                    reason: Box::new(e),
                })
        };
        check(union(&self.b1), "A + B1")?;
        check(union(&self.b2), "A + B2")?;
        for (i, &w1) in self.b1.iter().enumerate() {
            for (j, &w2) in self.b2.iter().enumerate() {
                if w1.anticommutes(w2) {
                    return Err(Error::B1B2NotCommuting { i, j });
                }
            }
        }
        Ok(())
    }
}

/// The combine rule `{A I, B1 X, B2 Z}`: appends one letter per set and
/// yields a basis on `|A| + |B1| + |B2|` generators of `(m+1)`-letter
/// words. All preconditions are checked, not assumed.
pub fn combine(input: &CombineInput) -> Result<WordMatrix> {
    input.validate()?;
    let mut rows = Vec::with_capacity(input.a.len() + input.b1.len() + input.b2.len());
    for &w in &input.a {
        rows.push(w.append(Character::I)?);
    }
    for &w in &input.b1 {
        rows.push(w.append(Character::X)?);
    }
    for &w in &input.b2 {
        rows.push(w.append(Character::Z)?);
    }
    WordMatrix::new(rows)
}

/// Replace every `A` by the two-letter substitution `I -> II`, `X -> XX`,
/// `Z -> ZX`, `A -> IZ` applied to the leftmost A-carrying column until no
/// `A` remains. Anticommutation is preserved position-wise; the square
/// signs survive because every row of a Euclidean basis has an even number
/// of `A`s.
pub fn eliminate_a(matrix: &WordMatrix) -> Result<WordMatrix> {
    matrix.verify()?;
    for (row, w) in matrix.rows().iter().enumerate() {
        if !w.is_euclidean_type() {
            return Err(Error::NonEuclidean { row });
        }
    }
    let mut current = matrix.clone();
    loop {
        let col = (0..current.m())
            .find(|&c| current.column(c).any(|l| l == Character::A));
        let Some(col) = col else {
            return Ok(current);
        };
        let rows = current
            .rows()
            .iter()
            .map(|w| {
                let mut letters = Vec::with_capacity(w.len() + 1);
                for (i, l) in w.letters().enumerate() {
                    if i == col {
                        let pair = match l {
                            Character::I => [Character::I, Character::I],
                            Character::X => [Character::X, Character::X],
                            Character::Z => [Character::Z, Character::X],
                            Character::A => [Character::I, Character::Z],
                        };
                        letters.extend_from_slice(&pair);
                    } else {
                        letters.push(l);
                    }
                }
                Word::new(&letters)
            })
            .collect::<Result<Vec<_>>>()?;
        current = WordMatrix::new(rows)?;
    }
}

fn cyclic_shifts(base: &[Character]) -> Result<Vec<Word>> {
    let n = base.len();
    (0..n)
        .map(|k| {
            let letters: Vec<Character> = (0..n).map(|i| base[(i + k) % n]).collect();
            Word::new(&letters)
        })
        .collect()
}

/// The cyclic family: `B1` holds the cyclic shifts of `I(ZX)^n`, `B2` those
/// of `I(XZ)^n`; `A = {Z..Z, X..X}` for odd `n` and is empty for even `n`.
/// Combining yields a `(4n+4, 0)` basis for odd `n` and a `(4n+2, 0)` basis
/// for even `n`, on `2n+2` letters.
pub fn cyclic_basis(n: usize) -> Result<WordMatrix> {
    let len = 2 * n + 1;
    let mut base1 = vec![Character::I];
    let mut base2 = vec![Character::I];
    for _ in 0..n {
        base1.extend_from_slice(&[Character::Z, Character::X]);
        base2.extend_from_slice(&[Character::X, Character::Z]);
    }
    let a = if n % 2 == 1 {
        vec![
            Word::new(&vec![Character::Z; len])?,
            Word::new(&vec![Character::X; len])?,
        ]
    } else {
        Vec::new()
    };
    combine(&CombineInput::new(a, cyclic_shifts(&base1)?, cyclic_shifts(&base2)?))
}

/// The concatenation product: pick one word `g` of `C1`; the result is
/// `{g w : w in C2}` plus every other `C1` word padded with `I`s, a
/// `(p1 + p2 - 1, 0)` basis of `(m1 + m2)`-letter words.
pub fn concat_product(c1: &WordMatrix, pick: usize, c2: &WordMatrix) -> Result<WordMatrix> {
    require_euclidean(c1)?;
    require_euclidean(c2)?;
    if pick >= c1.p() {
        return Err(Error::IndexOutOfRange {
            what: "row",
            index: pick,
            size: c1.p(),
        });
    }
    let g = c1.row(pick);
    let pad = Word::identity(c2.m())?;
    let mut rows = Vec::with_capacity(c1.p() + c2.p() - 1);
    for &w in c2.rows() {
        rows.push(g.concat(w)?);
    }
    for (i, &w) in c1.rows().iter().enumerate() {
        if i != pick {
            rows.push(w.concat(pad)?);
        }
    }
    WordMatrix::new(rows)
}

/// The Radon-Hurwitz values `G(1)..G(8)`.
pub const RADON_HURWITZ: [usize; 8] = [1, 2, 4, 4, 8, 8, 8, 8];

const LOG2_RADON_HURWITZ: [usize; 8] = [0, 1, 2, 2, 3, 3, 3, 3];

/// Minimal word length of a 4-character presentation of the Euclidean
/// algebra on `p >= 2` generators: writing `p = 8r + k + 2` with `r >= 0`
/// and `k` in `0..=7`, the length is `log2 G(k+1) + 4r + 1`.
///
/// The `+8 -> +4` mod-8 structure is Bott periodicity.
pub fn min_length_4char(p: usize) -> Result<usize> {
    if p < 2 {
        return Err(Error::PTooSmall { p });
    }
    let r = (p - 2) / 8;
    let k = (p - 2) % 8;
    Ok(LOG2_RADON_HURWITZ[k] + 4 * r + 1)
}
