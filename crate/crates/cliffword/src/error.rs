use thiserror::Error;

/// Domain errors for gamma-basis operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix has no rows")]
    EmptyMatrix,
    #[error("row {row} has length {len}, expected {expected}")]
    RaggedRows {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("rows {i} and {j} are identical")]
    DuplicateRow { i: usize, j: usize },
    #[error("rows {i} and {j} commute: not a gamma basis")]
    NotABasis { i: usize, j: usize },
    #[error("word length {len} exceeds the supported maximum of {max} letters")]
    WordTooLong { len: usize, max: usize },
    #[error("letter {index} is '{ch}', expected one of I, X, Z, A")]
    BadLetter { index: usize, ch: char },
    #[error("word length {m} exceeds the cap of {cap}")]
    CapExceeded { m: usize, cap: usize },
    #[error("transmutation of column {col} would touch an A character")]
    ATransmutation { col: usize },
    #[error("{what} index {index} out of range for size {size}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },
    #[error("{what} permutation is not a bijection of 0..{size}")]
    BadPermutation { what: &'static str, size: usize },
    #[error("all columns are erasable: simplification would leave no columns")]
    EmptyResult,
    #[error("B1 must be non-empty")]
    B1Empty,
    #[error("B2 must be non-empty")]
    B2Empty,
    #[error("{which} is not a gamma basis: {reason}")]
    NotGammaBasis {
        which: &'static str,
        reason: Box<Error>,
    },
    #[error("B1 word {i} anticommutes with B2 word {j}")]
    B1B2NotCommuting { i: usize, j: usize },
    #[error("row {row} has an odd number of A letters: basis is not Euclidean")]
    NonEuclidean { row: usize },
    #[error("p must be at least 2, got {p}")]
    PTooSmall { p: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
