//! Characters, words and word matrices: the symbolic layer in which gamma
//! bases are represented and checked.
//!
//! A gamma basis generator is an `m`-letter word over `{I, X, Z, A}`, each
//! letter standing for one 2x2 factor of an implicit tensor product. All
//! algebraic questions about the basis (anticommutation, square signs,
//! signature) reduce to per-position letter rules, so nothing here ever
//! touches a matrix; the `oracle` module provides the matrix realization for
//! cross-checking.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One of the four letters. The discriminant is the 2-bit packed code and
/// fixes the total order `I < X < Z < A` used everywhere for canonical forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Character {
    I = 0,
    X = 1,
    Z = 2,
    A = 3,
}

impl Character {
    pub const ALL: [Character; 4] = [Character::I, Character::X, Character::Z, Character::A];

    #[inline]
    pub(crate) fn from_code(code: u8) -> Character {
        match code & 3 {
            0 => Character::I,
            1 => Character::X,
            2 => Character::Z,
            _ => Character::A,
        }
    }

    #[inline]
    pub(crate) fn code(self) -> u8 {
        self as u8
    }

    /// Sign of the square of the corresponding 2x2 matrix: -1 for `A`
    /// (the antisymmetric one), +1 for the rest.
    #[inline]
    pub fn square_sign(self) -> i8 {
        if self == Character::A {
            -1
        } else {
            1
        }
    }

    /// Whether the two corresponding 2x2 matrices anticommute: true exactly
    /// when the letters differ and neither is `I`.
    #[inline]
    pub fn anticommutes(self, other: Character) -> bool {
        self != other && self != Character::I && other != Character::I
    }

    /// The X <-> Z exchange; `I` and `A` are fixed.
    #[inline]
    pub fn transmuted(self) -> Character {
        match self {
            Character::X => Character::Z,
            Character::Z => Character::X,
            c => c,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Character::I => 'I',
            Character::X => 'X',
            Character::Z => 'Z',
            Character::A => 'A',
        }
    }

    pub fn from_char(ch: char) -> Option<Character> {
        match ch {
            'I' => Some(Character::I),
            'X' => Some(Character::X),
            'Z' => Some(Character::Z),
            'A' => Some(Character::A),
            _ => None,
        }
    }
}

/// Which letters a word or candidate may draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `{I, X, Z}` — the Euclidean-complete alphabet.
    Three,
    /// `{I, X, Z, A}`.
    Four,
}

impl Alphabet {
    pub fn letters(self) -> &'static [Character] {
        match self {
            Alphabet::Three => &[Character::I, Character::X, Character::Z],
            Alphabet::Four => &Character::ALL,
        }
    }

    pub fn size(self) -> usize {
        self.letters().len()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::Three => write!(f, "IXZ"),
            Alphabet::Four => write!(f, "IXZA"),
        }
    }
}

const LOW_BITS: u64 = 0x5555_5555_5555_5555;

/// A fixed-length word, packed 2 bits per letter.
///
/// Letter 0 sits in the highest used 2-bit field, so for words of equal
/// length the packed value compares exactly like the letter sequence under
/// `I < X < Z < A`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word {
    len: u8,
    bits: u64,
}

/// Longest supported word: 32 letters fill the 64-bit packing.
pub const MAX_WORD_LEN: usize = 32;

// words always have at least one letter
#[allow(clippy::len_without_is_empty)]
impl Word {
    pub fn new(letters: &[Character]) -> Result<Word> {
        if letters.is_empty() || letters.len() > MAX_WORD_LEN {
            return Err(Error::WordTooLong {
                len: letters.len(),
                max: MAX_WORD_LEN,
            });
        }
        let mut bits = 0u64;
        for &c in letters {
            bits = (bits << 2) | u64::from(c.code());
        }
        Ok(Word {
            len: letters.len() as u8,
            bits,
        })
    }

    /// The all-`I` word of length `m` (the unit: it anticommutes with nothing).
    pub fn identity(m: usize) -> Result<Word> {
        if m == 0 || m > MAX_WORD_LEN {
            return Err(Error::WordTooLong {
                len: m,
                max: MAX_WORD_LEN,
            });
        }
        Ok(Word {
            len: m as u8,
            bits: 0,
        })
    }

    pub(crate) fn from_bits(len: usize, bits: u64) -> Word {
        debug_assert!((1..=MAX_WORD_LEN).contains(&len));
        Word {
            len: len as u8,
            bits,
        }
    }

    #[inline]
    pub(crate) fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn len(self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn letter(self, i: usize) -> Character {
        debug_assert!(i < self.len());
        let shift = 2 * (self.len() - 1 - i);
        Character::from_code(((self.bits >> shift) & 3) as u8)
    }

    pub fn letters(self) -> impl Iterator<Item = Character> {
        (0..self.len()).map(move |i| self.letter(i))
    }

    pub fn with_letter(self, i: usize, c: Character) -> Word {
        debug_assert!(i < self.len());
        let shift = 2 * (self.len() - 1 - i);
        let bits = (self.bits & !(3u64 << shift)) | (u64::from(c.code()) << shift);
        Word {
            len: self.len,
            bits,
        }
    }

    pub fn append(self, c: Character) -> Result<Word> {
        if self.len() + 1 > MAX_WORD_LEN {
            return Err(Error::WordTooLong {
                len: self.len() + 1,
                max: MAX_WORD_LEN,
            });
        }
        Ok(Word {
            len: self.len + 1,
            bits: (self.bits << 2) | u64::from(c.code()),
        })
    }

    /// `self` followed by `other` as one word.
    pub fn concat(self, other: Word) -> Result<Word> {
        let len = self.len() + other.len();
        if len > MAX_WORD_LEN {
            return Err(Error::WordTooLong {
                len,
                max: MAX_WORD_LEN,
            });
        }
        Ok(Word {
            len: len as u8,
            bits: (self.bits << (2 * other.len())) | other.bits,
        })
    }

    /// Mask with bit `2k` set iff letter at field `k` is not `I`.
    #[inline]
    fn non_identity_mask(self) -> u64 {
        (self.bits | (self.bits >> 1)) & LOW_BITS
    }

    /// Number of `A` letters.
    #[inline]
    pub fn a_count(self) -> usize {
        (self.bits & (self.bits >> 1) & LOW_BITS).count_ones() as usize
    }

    /// Number of `I` letters.
    #[inline]
    pub fn i_count(self) -> usize {
        self.len() - self.non_identity_mask().count_ones() as usize
    }

    /// Sign of the word's square: `(-1)^(number of A letters)`.
    #[inline]
    pub fn square_sign(self) -> i8 {
        if self.a_count().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// A word is Euclidean-type iff its square sign is +1.
    #[inline]
    pub fn is_euclidean_type(self) -> bool {
        self.a_count().is_multiple_of(2)
    }

    #[inline]
    pub fn is_identity(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, c: Character) -> bool {
        self.letters().any(|l| l == c)
    }

    /// Whether two equal-length words anticommute: true iff the number of
    /// positions whose letters anticommute is odd.
    ///
    /// Panics if the lengths differ; `WordMatrix` guarantees equal lengths.
    #[inline]
    pub fn anticommutes(self, other: Word) -> bool {
        assert_eq!(self.len, other.len, "words must have equal length");
        let differs = {
            let d = self.bits ^ other.bits;
            (d | (d >> 1)) & LOW_BITS
        };
        let both = self.non_identity_mask() & other.non_identity_mask();
        (differs & both).count_ones() % 2 == 1
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // big-endian packing: for equal lengths, numeric order = letter order
        self.len
            .cmp(&other.len)
            .then_with(|| self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.letters() {
            write!(f, "{}", c.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let mut letters = Vec::with_capacity(s.len());
        for (i, ch) in s.chars().enumerate() {
            match Character::from_char(ch) {
                Some(c) => letters.push(c),
                None => return Err(Error::BadLetter { index: i, ch }),
            }
        }
        Word::new(&letters)
    }
}

/// Signature of a basis: `p` generators squaring to +1, `q` squaring to -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// Result of verifying a word matrix as a gamma basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisReport {
    pub signature: Signature,
    /// True iff `q == 0`.
    pub euclidean: bool,
}

/// `p` words of identical length `m`, the rows of the rectangular matrix
/// form of a gamma-basis candidate.
///
/// Rows are kept in construction order and are pairwise distinct (a repeated
/// row commutes with itself, so it can never be part of a basis).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordMatrix {
    rows: Vec<Word>,
    m: usize,
}

impl WordMatrix {
    pub fn new(rows: Vec<Word>) -> Result<WordMatrix> {
        let first = rows.first().ok_or(Error::EmptyMatrix)?;
        let m = first.len();
        for (i, w) in rows.iter().enumerate() {
            if w.len() != m {
                return Err(Error::RaggedRows {
                    row: i,
                    len: w.len(),
                    expected: m,
                });
            }
        }
        for i in 0..rows.len() {
            for j in (i + 1)..rows.len() {
                if rows[i] == rows[j] {
                    return Err(Error::DuplicateRow { i, j });
                }
            }
        }
        Ok(WordMatrix { rows, m })
    }

    /// Parse from whitespace-separated word literals; test/fixture helper.
    pub fn parse_rows(words: &str) -> Result<WordMatrix> {
        let rows = words
            .split_whitespace()
            .map(Word::from_str)
            .collect::<Result<Vec<_>>>()?;
        WordMatrix::new(rows)
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    #[inline]
    pub fn row(&self, i: usize) -> Word {
        self.rows[i]
    }

    #[inline]
    pub fn letter(&self, row: usize, col: usize) -> Character {
        self.rows[row].letter(col)
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = Character> + '_ {
        self.rows.iter().map(move |w| w.letter(col))
    }

    pub fn contains(&self, c: Character) -> bool {
        self.rows.iter().any(|w| w.contains(c))
    }

    /// The alphabet the matrix actually needs: `Four` iff any `A` occurs.
    pub fn alphabet(&self) -> Alphabet {
        if self.contains(Character::A) {
            Alphabet::Four
        } else {
            Alphabet::Three
        }
    }

    /// Signature from the row square signs alone (no anticommutation check).
    pub fn signature(&self) -> Signature {
        let q = self.rows.iter().filter(|w| !w.is_euclidean_type()).count();
        Signature {
            p: self.p() - q,
            q,
        }
    }

    /// Check the gamma-basis relations: every distinct row pair must
    /// anticommute. Returns the signature, or the first commuting pair.
    pub fn verify(&self) -> Result<BasisReport> {
        for i in 0..self.p() {
            for j in (i + 1)..self.p() {
                if !self.rows[i].anticommutes(self.rows[j]) {
                    return Err(Error::NotABasis { i, j });
                }
            }
        }
        let signature = self.signature();
        Ok(BasisReport {
            signature,
            euclidean: signature.q == 0,
        })
    }

    /// All same-length words over `alphabet` that anticommute with every row
    /// and are not rows themselves. Empty iff the basis is maximally extended.
    ///
    /// Verifies the basis first. Enumerates `|alphabet|^m` candidates, so it
    /// is only meant for moderate `m`.
    pub fn extension_words(&self, alphabet: Alphabet) -> Result<Vec<Word>> {
        self.verify()?;
        let mut extensions = Vec::new();
        let mut found = true;
        let mut candidate = vec![Character::I; self.m];
        let letters = alphabet.letters();
        while found {
            let w = Word::new(&candidate).expect("candidate length equals m");
            if !w.is_identity()
                && !self.rows.contains(&w)
                && self.rows.iter().all(|&r| r.anticommutes(w))
            {
                extensions.push(w);
            }
            // odometer over the alphabet, least-significant position last
            found = false;
            for i in (0..self.m).rev() {
                let next = letters.iter().position(|&c| c == candidate[i]).unwrap() + 1;
                if next < letters.len() {
                    candidate[i] = letters[next];
                    for c in candidate.iter_mut().skip(i + 1) {
                        *c = Character::I;
                    }
                    found = true;
                    break;
                }
            }
        }
        Ok(extensions)
    }

    /// True iff no same-length word over `alphabet` anticommutes with every
    /// row; the accompanying list holds all valid extensions when false.
    pub fn is_maximally_extended(&self, alphabet: Alphabet) -> Result<(bool, Vec<Word>)> {
        let extensions = self.extension_words(alphabet)?;
        Ok((extensions.is_empty(), extensions))
    }

    /// Append `word` as a new row.
    pub fn with_row(&self, word: Word) -> Result<WordMatrix> {
        let mut rows = self.rows.clone();
        rows.push(word);
        WordMatrix::new(rows)
    }
}

impl fmt::Display for WordMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}
