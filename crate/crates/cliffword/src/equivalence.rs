//! The finite equivalence group on alphabetic presentations and everything
//! derived from it: moves, column simplification, the five invariants,
//! canonical forms and equivalence testing.
//!
//! The group combines row permutations, column permutations and per-column
//! X<->Z transmutations. On matrices containing `A` the transmutations are
//! restricted to A-free columns, since an A<->X or A<->Z exchange would
//! change the signature. The canonical form of a matrix is the
//! lexicographically least row-major letter string reachable by any group
//! element, with rows sorted ascending as the final step; two matrices are
//! equivalent exactly when their canonical forms coincide.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Alphabet, Character, Word, WordMatrix};

/// One generator move of the equivalence group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupMove {
    /// `result row i = input row perm[i]`.
    RowPermutation(Vec<usize>),
    /// `result column j = input column perm[j]`.
    ColumnPermutation(Vec<usize>),
    /// Exchange X and Z in one column; rejected if the column contains an A.
    ColumnTransmutation(usize),
}

fn check_permutation(perm: &[usize], size: usize, what: &'static str) -> Result<()> {
    if perm.len() != size {
        return Err(Error::BadPermutation { what, size });
    }
    let mut seen = vec![false; size];
    for &i in perm {
        if i >= size || seen[i] {
            return Err(Error::BadPermutation { what, size });
        }
        seen[i] = true;
    }
    Ok(())
}

/// Apply one group move. The gamma-basis relations and the signature are
/// unchanged by construction.
pub fn apply_move(matrix: &WordMatrix, mv: &GroupMove) -> Result<WordMatrix> {
    match mv {
        GroupMove::RowPermutation(perm) => {
            check_permutation(perm, matrix.p(), "row")?;
            let rows = perm.iter().map(|&i| matrix.row(i)).collect();
            WordMatrix::new(rows)
        }
        GroupMove::ColumnPermutation(perm) => {
            check_permutation(perm, matrix.m(), "column")?;
            let rows = matrix
                .rows()
                .iter()
                .map(|w| {
                    let letters: Vec<Character> = perm.iter().map(|&c| w.letter(c)).collect();
                    Word::new(&letters).expect("same length as input word")
                })
                .collect();
            WordMatrix::new(rows)
        }
        GroupMove::ColumnTransmutation(col) => {
            let col = *col;
            if col >= matrix.m() {
                return Err(Error::IndexOutOfRange {
                    what: "column",
                    index: col,
                    size: matrix.m(),
                });
            }
            if matrix.column(col).any(|c| c == Character::A) {
                return Err(Error::ATransmutation { col });
            }
            let rows = matrix
                .rows()
                .iter()
                .map(|w| w.with_letter(col, w.letter(col).transmuted()))
                .collect();
            WordMatrix::new(rows)
        }
    }
}

/// A column is erasable when its character set lies in `{I,X}` or `{I,Z}`:
/// such a column contributes no anticommutation and no square sign, so
/// deleting it preserves the basis relations. Columns containing `A` are
/// never erasable (deleting one would flip square signs).
fn column_erasable(matrix: &WordMatrix, col: usize) -> bool {
    let mut has_x = false;
    let mut has_z = false;
    for c in matrix.column(col) {
        match c {
            Character::A => return false,
            Character::X => has_x = true,
            Character::Z => has_z = true,
            Character::I => {}
        }
    }
    !(has_x && has_z)
}

pub fn erasable_columns(matrix: &WordMatrix) -> Vec<usize> {
    (0..matrix.m())
        .filter(|&c| column_erasable(matrix, c))
        .collect()
}

/// No erasable column.
pub fn is_simple(matrix: &WordMatrix) -> bool {
    (0..matrix.m()).all(|c| !column_erasable(matrix, c))
}

/// Delete every erasable column. Erasability of a column does not depend on
/// the other columns, so one pass reaches the fixed point; the output has
/// the same pairwise anticommutation relations and the same signature.
pub fn simplify(matrix: &WordMatrix) -> Result<WordMatrix> {
    matrix.verify()?;
    let keep: Vec<usize> = (0..matrix.m())
        .filter(|&c| !column_erasable(matrix, c))
        .collect();
    if keep.is_empty() {
        return Err(Error::EmptyResult);
    }
    if keep.len() == matrix.m() {
        return Ok(matrix.clone());
    }
    let rows = matrix
        .rows()
        .iter()
        .map(|w| {
            let letters: Vec<Character> = keep.iter().map(|&c| w.letter(c)).collect();
            Word::new(&letters).expect("at least one kept column")
        })
        .collect();
    WordMatrix::new(rows)
}

/// The five equivalence-group invariants of a word matrix.
///
/// Tallies are `(value, multiplicity)` pairs with values descending;
/// `ver_hat` tallies `(n_I, n_XZ)` column pairs in descending
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantProfile {
    /// Per-row I-count tally.
    pub hor: Vec<(usize, usize)>,
    /// Per-column I-count tally.
    pub ver: Vec<(usize, usize)>,
    /// Per-column `|n_X - n_Z|` tally.
    pub ver_tilde: Vec<(usize, usize)>,
    /// Per-column `(n_I, n_XZ)` pair tally.
    pub ver_hat: Vec<((usize, usize), usize)>,
    /// Total number of I entries.
    pub n_i: usize,
}

fn tally_desc<T: Ord + Copy>(mut values: Vec<T>) -> Vec<(T, usize)> {
    values.sort_unstable_by(|a, b| b.cmp(a));
    let mut out: Vec<(T, usize)> = Vec::new();
    for v in values {
        match out.last_mut() {
            Some((last, count)) if *last == v => *count += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

pub fn invariant_profile(matrix: &WordMatrix) -> InvariantProfile {
    let row_i: Vec<usize> = matrix.rows().iter().map(|w| w.i_count()).collect();
    let n_i = row_i.iter().sum();

    let mut col_i = Vec::with_capacity(matrix.m());
    let mut col_xz = Vec::with_capacity(matrix.m());
    for col in 0..matrix.m() {
        let mut counts = [0usize; 4];
        for c in matrix.column(col) {
            counts[c.code() as usize] += 1;
        }
        col_i.push(counts[Character::I.code() as usize]);
        let x = counts[Character::X.code() as usize];
        let z = counts[Character::Z.code() as usize];
        col_xz.push(x.abs_diff(z));
    }
    let pairs: Vec<(usize, usize)> = col_i.iter().copied().zip(col_xz.iter().copied()).collect();

    InvariantProfile {
        hor: tally_desc(row_i),
        ver: tally_desc(col_i),
        ver_tilde: tally_desc(col_xz),
        ver_hat: tally_desc(pairs),
        n_i,
    }
}

fn fmt_tally(f: &mut fmt::Formatter<'_>, name: &str, tally: &[(usize, usize)]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, (value, mult)) in tally.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{mult}_{value}")?;
    }
    write!(f, ")")
}

impl fmt::Display for InvariantProfile {
    /// Subscript notation, e.g. `hor(1_1,2_0); ...; N_I=1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tally(f, "hor", &self.hor)?;
        write!(f, "; ")?;
        fmt_tally(f, "ver", &self.ver)?;
        write!(f, "; ")?;
        fmt_tally(f, "ver~", &self.ver_tilde)?;
        write!(f, "; ver^(")?;
        for (i, ((ni, nxz), mult)) in self.ver_hat.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{mult}_({ni},{nxz})")?;
        }
        write!(f, "); N_I={}", self.n_i)
    }
}

/// The distinguished representative of a matrix's equivalence class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub matrix: WordMatrix,
    /// The alphabet (and hence group restriction) it was computed under.
    pub alphabet: Alphabet,
}

/// Canonical form: the least image of the matrix under the group, rows
/// sorted ascending, letter strings compared row-major.
pub fn canonical_form(matrix: &WordMatrix) -> CanonicalForm {
    let mut minimizer = Minimizer::new(matrix.m());
    let rows = minimizer.minimize(matrix.rows());
    CanonicalForm {
        matrix: WordMatrix::new(rows).expect("group images of distinct rows stay distinct"),
        alphabet: matrix.alphabet(),
    }
}

/// Group equivalence; trivially false when shapes differ.
pub fn equivalent(m1: &WordMatrix, m2: &WordMatrix) -> bool {
    m1.p() == m2.p()
        && m1.m() == m2.m()
        && canonical_form(m1).matrix == canonical_form(m2).matrix
}

const FLIP_CODE: [u8; 4] = [0, 2, 1, 3]; // I, X<->Z, A fixed

/// Exact minimization of a word matrix over the equivalence group, and the
/// canonicity test the isomorph-rejecting search is built on.
///
/// Backtracks over the target columns of the image, choosing a source
/// column and an optional transmutation per step. Row permutations never
/// branch: rows are sorted at the leaves. Two prefix facts keep the search
/// sound and let it prune:
/// the smallest image word always carries the smallest image prefix, so a
/// branch whose minimal prefix already exceeds the reference first word can
/// never beat it, and a branch whose minimal prefix is strictly below it
/// beats it under every completion.
pub(crate) struct Minimizer {
    m: usize,
    p: usize,
    letters: Vec<u8>,    // row-major p x m
    flip_ok: Vec<bool>,  // per source column: has X or Z, no A
    img: Vec<Vec<u64>>,  // per depth: packed image prefixes, original row order
    incumbent: Vec<u64>, // ascending packed full words
    choices: Vec<Vec<(u64, u8, bool)>>,
    leaf: Vec<u64>,
    test_mode: bool,
    smaller_found: bool,
}

impl Minimizer {
    pub(crate) fn new(m: usize) -> Minimizer {
        Minimizer {
            m,
            p: 0,
            letters: Vec::new(),
            flip_ok: vec![false; m],
            img: vec![Vec::new(); m + 1],
            incumbent: Vec::new(),
            choices: vec![Vec::new(); m],
            leaf: Vec::new(),
            test_mode: false,
            smaller_found: false,
        }
    }

    fn load(&mut self, rows: &[Word]) {
        self.p = rows.len();
        self.letters.clear();
        let mut col_x = vec![false; self.m];
        let mut col_z = vec![false; self.m];
        let mut col_a = vec![false; self.m];
        for w in rows {
            debug_assert_eq!(w.len(), self.m);
            for (c, letter) in w.letters().enumerate() {
                self.letters.push(letter.code());
                match letter {
                    Character::X => col_x[c] = true,
                    Character::Z => col_z[c] = true,
                    Character::A => col_a[c] = true,
                    Character::I => {}
                }
            }
        }
        for c in 0..self.m {
            self.flip_ok[c] = (col_x[c] || col_z[c]) && !col_a[c];
        }
        for level in &mut self.img {
            level.clear();
            level.resize(self.p, 0);
        }
        self.leaf.clear();
        self.leaf.resize(self.p, 0);
    }

    /// Least reachable image of `rows`, rows sorted ascending.
    pub(crate) fn minimize(&mut self, rows: &[Word]) -> Vec<Word> {
        self.load(rows);
        self.incumbent = rows.iter().map(|w| w.bits()).collect();
        self.incumbent.sort_unstable();
        self.test_mode = false;
        self.dfs(0, 0);
        let m = self.m;
        self.incumbent
            .iter()
            .map(|&bits| Word::from_bits(m, bits))
            .collect()
    }

    /// Whether `rows` (ascending) is its own class minimum.
    pub(crate) fn is_canonical(&mut self, rows: &[Word]) -> bool {
        debug_assert!(rows.windows(2).all(|w| w[0] < w[1]));
        self.load(rows);
        self.incumbent.clear();
        self.incumbent.extend(rows.iter().map(|w| w.bits()));
        self.test_mode = true;
        self.smaller_found = false;
        self.dfs(0, 0);
        !self.smaller_found
    }

    fn dfs(&mut self, depth: usize, used: u32) {
        if depth == self.m {
            self.leaf.copy_from_slice(&self.img[self.m]);
            self.leaf.sort_unstable();
            if self.leaf < self.incumbent {
                if self.test_mode {
                    self.smaller_found = true;
                } else {
                    self.incumbent.copy_from_slice(&self.leaf);
                }
            }
            return;
        }
        // prefix of the reference first word at the next depth
        let s1p = self.incumbent[0] >> (2 * (self.m - depth - 1));

        let mut candidates = std::mem::take(&mut self.choices[depth]);
        candidates.clear();
        for col in 0..self.m {
            if used & (1 << col) != 0 {
                continue;
            }
            let flips: &[bool] = if self.flip_ok[col] {
                &[false, true]
            } else {
                &[false]
            };
            for &flip in flips {
                let mut minpref = u64::MAX;
                for r in 0..self.p {
                    let mut code = self.letters[r * self.m + col];
                    if flip {
                        code = FLIP_CODE[code as usize];
                    }
                    let pref = (self.img[depth][r] << 2) | u64::from(code);
                    minpref = minpref.min(pref);
                }
                if minpref > s1p {
                    continue;
                }
                if self.test_mode && minpref < s1p {
                    // every completion of this branch beats the reference
                    self.smaller_found = true;
                    self.choices[depth] = candidates;
                    return;
                }
                candidates.push((minpref, col as u8, flip));
            }
        }
        if !self.test_mode {
            candidates.sort_unstable();
        }

        for &(_, col, flip) in &candidates {
            let col = col as usize;
            // re-check against the (possibly improved) incumbent
            let s1p = self.incumbent[0] >> (2 * (self.m - depth - 1));
            let mut minpref = u64::MAX;
            {
                let (pre, post) = self.img.split_at_mut(depth + 1);
                let cur = &pre[depth];
                let next = &mut post[0];
                for r in 0..self.p {
                    let mut code = self.letters[r * self.m + col];
                    if flip {
                        code = FLIP_CODE[code as usize];
                    }
                    let pref = (cur[r] << 2) | u64::from(code);
                    next[r] = pref;
                    minpref = minpref.min(pref);
                }
            }
            if minpref > s1p {
                continue;
            }
            self.dfs(depth + 1, used | (1 << col));
            if self.test_mode && self.smaller_found {
                break;
            }
        }
        self.choices[depth] = candidates;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(words: &str) -> WordMatrix {
        WordMatrix::parse_rows(words).unwrap()
    }

    #[test]
    fn row_permutation_reorders() {
        let m = matrix("XX ZX IZ");
        let out = apply_move(&m, &GroupMove::RowPermutation(vec![1, 0, 2])).unwrap();
        assert_eq!(out, matrix("ZX XX IZ"));
    }

    #[test]
    fn transmutation_swaps_x_and_z() {
        let m = matrix("XX ZX IZ");
        let out = apply_move(&m, &GroupMove::ColumnTransmutation(0)).unwrap();
        let mut rows: Vec<Word> = out.rows().to_vec();
        rows.sort();
        let mut expected: Vec<Word> = matrix("ZX XX IZ").rows().to_vec();
        expected.sort();
        assert_eq!(rows, expected);
    }

    #[test]
    fn transmutation_rejects_a_column() {
        let m = matrix("IX IZ AA");
        assert_eq!(
            apply_move(&m, &GroupMove::ColumnTransmutation(0)),
            Err(Error::ATransmutation { col: 0 })
        );
    }

    #[test]
    fn moves_validate_indices() {
        let m = matrix("XX ZX IZ");
        assert!(matches!(
            apply_move(&m, &GroupMove::RowPermutation(vec![0, 0, 1])),
            Err(Error::BadPermutation { .. })
        ));
        assert!(matches!(
            apply_move(&m, &GroupMove::ColumnPermutation(vec![0])),
            Err(Error::BadPermutation { .. })
        ));
        assert!(matches!(
            apply_move(&m, &GroupMove::ColumnTransmutation(7)),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn moves_preserve_signature_and_profile() {
        let m = matrix("XX ZX IZ");
        let profile = invariant_profile(&m);
        let moves = [
            GroupMove::RowPermutation(vec![2, 0, 1]),
            GroupMove::ColumnPermutation(vec![1, 0]),
            GroupMove::ColumnTransmutation(1),
        ];
        let mut current = m.clone();
        for mv in &moves {
            current = apply_move(&current, mv).unwrap();
            assert_eq!(current.signature(), m.signature());
            assert_eq!(invariant_profile(&current), profile);
            current.verify().unwrap();
        }
    }

    #[test]
    fn simplify_reproduces_column_erasure() {
        let wide = matrix("IIXX IIZX IZIZ");
        let simple = simplify(&wide).unwrap();
        assert_eq!(simple, matrix("XX ZX IZ"));
        // fixed point
        assert_eq!(simplify(&simple).unwrap(), simple);
        assert!(is_simple(&simple));
        assert!(!is_simple(&wide));
    }

    #[test]
    fn simplify_erases_all_i_column() {
        assert_eq!(simplify(&matrix("XI ZI")).unwrap(), matrix("X Z"));
    }

    #[test]
    fn simplify_of_single_word_can_empty() {
        assert_eq!(simplify(&matrix("X")), Err(Error::EmptyResult));
        // a lone A-column is not erasable
        assert_eq!(simplify(&matrix("AA")).unwrap(), matrix("AA"));
    }

    #[test]
    fn simplify_preserves_relations() {
        let wide = matrix("IIXX IIZX IZIZ");
        let simple = simplify(&wide).unwrap();
        for i in 0..wide.p() {
            assert_eq!(wide.row(i).square_sign(), simple.row(i).square_sign());
            for j in 0..wide.p() {
                if i != j {
                    assert_eq!(
                        wide.row(i).anticommutes(wide.row(j)),
                        simple.row(i).anticommutes(simple.row(j))
                    );
                }
            }
        }
    }

    #[test]
    fn profile_of_simple_cl30_matrix() {
        let profile = invariant_profile(&matrix("XX ZX IZ"));
        assert_eq!(profile.hor, vec![(1, 1), (0, 2)]);
        assert_eq!(profile.ver, vec![(1, 1), (0, 1)]);
        assert_eq!(profile.ver_tilde, vec![(1, 1), (0, 1)]);
        assert_eq!(profile.ver_hat, vec![((1, 0), 1), ((0, 1), 1)]);
        assert_eq!(profile.n_i, 1);
        assert_eq!(
            profile.to_string(),
            "hor(1_1,2_0); ver(1_1,1_0); ver~(1_1,1_0); ver^(1_(1,0),1_(0,1)); N_I=1"
        );
    }

    #[test]
    fn profile_of_known_classes() {
        let four_beta = matrix("XXI XZI ZIX ZIZ");
        let profile = invariant_profile(&four_beta);
        assert_eq!(profile.hor, vec![(1, 4)]);
        assert_eq!(profile.ver, vec![(2, 2), (0, 1)]);
        assert_eq!(profile.n_i, 4);

        let eight = matrix("IXXX XZIX ZIZX ZZXI XXZI XIXZ ZXIZ IZZZ");
        let profile = invariant_profile(&eight);
        assert_eq!(profile.hor, vec![(1, 8)]);
        assert_eq!(profile.ver, vec![(2, 4)]);
        assert_eq!(profile.n_i, 8);
    }

    // reference: least sorted image over explicit enumeration of the whole
    // group (all column permutations x all allowed flip subsets)
    fn brute_force_min(m: &WordMatrix) -> Vec<Word> {
        fn permutations(n: usize) -> Vec<Vec<usize>> {
            if n == 1 {
                return vec![vec![0]];
            }
            let mut out = Vec::new();
            for perm in permutations(n - 1) {
                for slot in 0..n {
                    let mut next: Vec<usize> = perm.iter().map(|&v| v + 1).collect();
                    next.insert(slot, 0);
                    out.push(next);
                }
            }
            out
        }
        let cols = m.m();
        let a_free: Vec<bool> = (0..cols)
            .map(|c| m.column(c).all(|l| l != Character::A))
            .collect();
        let mut best: Option<Vec<Word>> = None;
        for perm in permutations(cols) {
            for flips in 0u32..(1 << cols) {
                if (0..cols).any(|c| flips & (1 << c) != 0 && !a_free[c]) {
                    continue;
                }
                let rows: Vec<Word> = m
                    .rows()
                    .iter()
                    .map(|w| {
                        let letters: Vec<Character> = perm
                            .iter()
                            .map(|&c| {
                                let l = w.letter(c);
                                if flips & (1 << c) != 0 {
                                    l.transmuted()
                                } else {
                                    l
                                }
                            })
                            .collect();
                        Word::new(&letters).unwrap()
                    })
                    .collect();
                let mut rows = rows;
                rows.sort();
                if best.as_ref().is_none_or(|b| rows < *b) {
                    best = Some(rows);
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn canonical_form_matches_brute_force() {
        let samples = [
            "XX ZX IZ",
            "ZZ ZX XI",
            "XXX XIZ IZX ZXI ZZZ",
            "XXI XZI ZIX ZIZ",
            "IX IZ AA",
            "XA ZA AA AI",
        ];
        for s in samples {
            let m = matrix(s);
            assert_eq!(
                canonical_form(&m).matrix.rows(),
                brute_force_min(&m),
                "sample {s}"
            );
        }
    }

    #[test]
    fn four_equivalent_m2_presentations() {
        let presentations = ["XX ZX IZ", "XX XZ ZI", "ZZ XZ IX", "ZZ ZX XI"];
        let canon = canonical_form(&matrix(presentations[0])).matrix;
        for s in &presentations[1..] {
            assert_eq!(canonical_form(&matrix(s)).matrix, canon, "{s}");
            assert!(equivalent(&matrix(presentations[0]), &matrix(s)));
        }
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let m = matrix("XXX XIZ IZX ZXI ZZZ");
        let c1 = canonical_form(&m);
        let c2 = canonical_form(&c1.matrix);
        assert_eq!(c1, c2);
    }

    #[test]
    fn inequivalent_classes_are_separated() {
        let four_alpha = matrix("XXX XXZ XZI ZII");
        let four_beta = matrix("XXI XZI ZIX ZIZ");
        assert!(!equivalent(&four_alpha, &four_beta));
        assert!(equivalent(&four_alpha, &four_alpha));
    }

    #[test]
    fn shape_mismatch_is_inequivalent() {
        assert!(!equivalent(&matrix("X Z"), &matrix("XX ZX IZ")));
    }

    #[test]
    fn is_canonical_agrees_with_minimize() {
        let mut minimizer = Minimizer::new(3);
        let samples = ["XXX XIZ IZX ZXI ZZZ", "IIX IZZ", "IXZ ZZI", "XXX ZZZ"];
        for s in samples {
            let m = matrix(s);
            let min = minimizer.minimize(m.rows());
            let mut sorted = m.rows().to_vec();
            sorted.sort();
            let expected = sorted == min;
            assert_eq!(minimizer.is_canonical(&sorted), expected, "{s}");
            assert!(minimizer.is_canonical(&min), "minimum of {s} not canonical");
        }
    }

    #[test]
    fn n_i_collision_is_resolved_by_equivalence() {
        // both have N_I = 3, but only the canonical form tells them apart
        let non_maximal = matrix("XIZ IZX ZXI ZZZ");
        let four_alpha = matrix("XXX XXZ XZI ZII");
        assert_eq!(
            invariant_profile(&non_maximal).n_i,
            invariant_profile(&four_alpha).n_i
        );
        assert!(!equivalent(&non_maximal, &four_alpha));
    }
}
