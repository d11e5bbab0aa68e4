//! Gamma bases of real Clifford algebras as words over the four-letter
//! alphabet `{I, X, Z, A}`.
//!
//! Each letter stands for one of four 2x2 real matrices and a word for their
//! tensor product, so a set of pairwise-anticommuting words is a gamma basis
//! presentation. The crate provides:
//!
//! - the letter-level anticommutation and square-sign rules ([`word`]),
//!   with an exact signed-permutation matrix realization as ground truth
//!   ([`oracle`]);
//! - the finite equivalence group on presentations (row/column permutations
//!   and per-column X<->Z transmutations), its invariants, simplification
//!   and exact canonical forms ([`equivalence`]);
//! - generative constructions: extension, the combine rule, A-elimination,
//!   the cyclic family, the concatenation product and the 4-character
//!   minimal-length formula ([`construct`]);
//! - exhaustive isomorph-rejecting classification of simple, maximally
//!   extended 3-character bases at fixed word length ([`search`]);
//! - text and structured file formats ([`catalog`]).

pub mod catalog;
pub mod construct;
pub mod equivalence;
mod error;
pub mod goldens;
pub mod oracle;
pub mod search;
pub mod word;

pub use error::{Error, Result};
pub use word::{Alphabet, BasisReport, Character, Signature, Word, WordMatrix};
