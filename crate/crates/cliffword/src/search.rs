//! Exhaustive, isomorph-rejecting classification of simple, maximally
//! extended 3-character gamma bases at fixed word length.
//!
//! A gamma basis on `m`-letter `{I,X,Z}` words is exactly a clique of the
//! anticommutation graph on the `3^m - 1` non-identity words, and maximal
//! extension is clique maximality. Classes are generated orderly: cliques
//! grow by appending words above the current maximum, and a branch is cut
//! unless the grown set is the lexicographic minimum of its orbit under the
//! equivalence group. Removing the largest word of such a minimum leaves
//! another one, so every class is reached exactly once, with no cross-branch
//! bookkeeping; the canonical representatives are the search states
//! themselves.

use rayon::prelude::*;

use crate::equivalence::{invariant_profile, InvariantProfile, Minimizer};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Character, Word, WordMatrix};

/// Default cap on the word length of a search.
pub const DEFAULT_SEARCH_CAP: usize = 8;

/// The anticommutation graph on all non-identity `{I,X,Z}` words of one
/// length. Vertex ids follow ascending packed word order.
pub struct AnticommutationGraph {
    m: usize,
    words: Vec<Word>,
    i_counts: Vec<u8>,
    blocks: usize,
    adj: Vec<u64>,
}

impl AnticommutationGraph {
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of vertices, `3^m - 1`.
    pub fn vertex_count(&self) -> usize {
        self.words.len()
    }

    pub fn word(&self, v: usize) -> Word {
        self.words[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).iter().map(|b| b.count_ones() as usize).sum()
    }

    fn neighbors(&self, v: usize) -> &[u64] {
        &self.adj[v * self.blocks..(v + 1) * self.blocks]
    }
}

pub fn build_graph(m: usize) -> Result<AnticommutationGraph> {
    build_graph_capped(m, DEFAULT_SEARCH_CAP)
}

pub fn build_graph_capped(m: usize, cap: usize) -> Result<AnticommutationGraph> {
    if m == 0 || m > cap {
        return Err(Error::CapExceeded { m, cap });
    }
    let mut words = Vec::with_capacity(3usize.pow(m as u32) - 1);
    let mut letters = vec![Character::I; m];
    'outer: loop {
        // odometer over {I,X,Z}, most significant letter first
        for i in (0..m).rev() {
            letters[i] = match letters[i] {
                Character::I => Character::X,
                Character::X => Character::Z,
                Character::Z => {
                    letters[i] = Character::I;
                    continue;
                }
                Character::A => unreachable!(),
            };
            words.push(Word::new(&letters).expect("length m"));
            continue 'outer;
        }
        break;
    }
    words.sort_unstable();
    let n = words.len();
    debug_assert_eq!(n, 3usize.pow(m as u32) - 1);
    let blocks = n.div_ceil(64);
    let mut adj = vec![0u64; n * blocks];
    for i in 0..n {
        for j in (i + 1)..n {
            if words[i].anticommutes(words[j]) {
                adj[i * blocks + j / 64] |= 1 << (j % 64);
                adj[j * blocks + i / 64] |= 1 << (i % 64);
            }
        }
    }
    let i_counts = words.iter().map(|w| w.i_count() as u8).collect();
    Ok(AnticommutationGraph {
        m,
        words,
        i_counts,
        blocks,
        adj,
    })
}

#[derive(Clone, PartialEq, Eq)]
struct Bitset {
    blocks: Vec<u64>,
}

impl Bitset {
    fn full(n: usize) -> Bitset {
        let mut blocks = vec![u64::MAX; n.div_ceil(64)];
        if !n.is_multiple_of(64) {
            *blocks.last_mut().unwrap() = (1u64 << (n % 64)) - 1;
        }
        Bitset { blocks }
    }

    fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    fn intersection(&self, other: &[u64]) -> Bitset {
        Bitset {
            blocks: self
                .blocks
                .iter()
                .zip(other)
                .map(|(&a, &b)| a & b)
                .collect(),
        }
    }

    /// `self & other & {ids > v}`.
    fn intersection_above(&self, other: &[u64], v: usize) -> Bitset {
        let mut out = self.intersection(other);
        let block = v / 64;
        for b in out.blocks.iter_mut().take(block) {
            *b = 0;
        }
        if v % 64 == 63 {
            out.blocks[block] = 0;
        } else {
            out.blocks[block] &= !((1u64 << (v % 64 + 1)) - 1);
        }
        out
    }

    fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &block)| {
            let mut rest = block;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + bit)
            })
        })
    }
}

/// One equivalence class of a catalog: its canonical representative, the
/// generator count and the invariant profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassEntry {
    pub representative: WordMatrix,
    pub p: usize,
    pub profile: InvariantProfile,
}

/// All equivalence classes of simple, maximally extended gamma bases at one
/// word length, sorted by descending `p`, then ascending representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCatalog {
    pub m: usize,
    pub alphabet: Alphabet,
    pub classes: Vec<ClassEntry>,
}

/// 3-character columns only: erasable means the column never holds both an
/// X and a Z.
fn rows_simple(words: &[Word], m: usize) -> bool {
    'col: for c in 0..m {
        let mut has_x = false;
        let mut has_z = false;
        for w in words {
            match w.letter(c) {
                Character::X => has_x = true,
                Character::Z => has_z = true,
                _ => {}
            }
            if has_x && has_z {
                continue 'col;
            }
        }
        return false;
    }
    true
}

struct Explorer<'g> {
    graph: &'g AnticommutationGraph,
    minimizer: Minimizer,
    set_words: Vec<Word>,
    found: Vec<Vec<Word>>,
}

impl<'g> Explorer<'g> {
    fn new(graph: &'g AnticommutationGraph) -> Explorer<'g> {
        Explorer {
            graph,
            minimizer: Minimizer::new(graph.m()),
            set_words: Vec::new(),
            found: Vec::new(),
        }
    }

    fn visit_maximal(&mut self, common: &Bitset) {
        if !self.set_words.is_empty() && common.is_empty() && rows_simple(&self.set_words, self.graph.m()) {
            self.found.push(self.set_words.clone());
        }
    }

    /// Grow the current canonical clique by every word above its maximum.
    fn explore(&mut self, max_icount: u8, cand: &Bitset, common: &Bitset) {
        self.visit_maximal(common);
        for v in cand.iter_ones() {
            let ic = self.graph.i_counts[v];
            // the first word of a canonical set is I^a X^b with a the
            // maximal row I-count, so a row with more I's than the current
            // first row can never join a canonical set
            if !self.set_words.is_empty() && ic > max_icount {
                continue;
            }
            self.set_words.push(self.graph.word(v));
            if self.minimizer.is_canonical(&self.set_words) {
                let next_cand = cand.intersection_above(self.graph.neighbors(v), v);
                let next_common = common.intersection(self.graph.neighbors(v));
                self.explore(max_icount.max(ic), &next_cand, &next_common);
            }
            self.set_words.pop();
        }
    }
}

/// A frontier node handed to a worker: a canonical clique plus its
/// candidate and common-neighbor sets.
struct Task {
    set_words: Vec<Word>,
    max_icount: u8,
    cand: Bitset,
    common: Bitset,
}

fn collect_frontier<'g>(
    explorer: &mut Explorer<'g>,
    depth_left: usize,
    max_icount: u8,
    cand: &Bitset,
    common: &Bitset,
    tasks: &mut Vec<Task>,
) {
    explorer.visit_maximal(common);
    for v in cand.iter_ones() {
        let ic = explorer.graph.i_counts[v];
        if !explorer.set_words.is_empty() && ic > max_icount {
            continue;
        }
        explorer.set_words.push(explorer.graph.word(v));
        if explorer.minimizer.is_canonical(&explorer.set_words) {
            let next_cand = cand.intersection_above(explorer.graph.neighbors(v), v);
            let next_common = common.intersection(explorer.graph.neighbors(v));
            let next_icount = max_icount.max(ic);
            if depth_left == 1 {
                tasks.push(Task {
                    set_words: explorer.set_words.clone(),
                    max_icount: next_icount,
                    cand: next_cand,
                    common: next_common,
                });
            } else {
                collect_frontier(explorer, depth_left - 1, next_icount, &next_cand, &next_common, tasks);
            }
        }
        explorer.set_words.pop();
    }
}

const FRONTIER_DEPTH: usize = 2;

/// Classify with the default worker count.
pub fn enumerate_classes(m: usize) -> Result<ClassCatalog> {
    enumerate_classes_with_threads(m, 0)
}

/// Classify with an explicit worker count (`0` = default). The catalog is
/// independent of the worker count: subtrees are disjoint and the classes
/// are finally sorted by a total key.
pub fn enumerate_classes_with_threads(m: usize, threads: usize) -> Result<ClassCatalog> {
    let graph = build_graph(m)?;
    let universe = Bitset::full(graph.vertex_count());

    let mut frontier_explorer = Explorer::new(&graph);
    let mut tasks = Vec::new();
    collect_frontier(
        &mut frontier_explorer,
        FRONTIER_DEPTH,
        0,
        &universe,
        &universe,
        &mut tasks,
    );
    let mut found = frontier_explorer.found;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("worker pool");
    let results: Vec<Vec<Vec<Word>>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|task| {
                let mut explorer = Explorer::new(&graph);
                explorer.set_words = task.set_words.clone();
                explorer.explore(task.max_icount, &task.cand, &task.common);
                explorer.found
            })
            .collect()
    });
    for r in results {
        found.extend(r);
    }

    let mut classes: Vec<ClassEntry> = found
        .into_iter()
        .map(|rows| {
            let representative = WordMatrix::new(rows).expect("clique rows are distinct");
            let p = representative.p();
            let profile = invariant_profile(&representative);
            ClassEntry {
                representative,
                p,
                profile,
            }
        })
        .collect();
    classes.sort_unstable_by(|a, b| {
        b.p.cmp(&a.p)
            .then_with(|| a.representative.rows().cmp(b.representative.rows()))
    });
    Ok(ClassCatalog {
        m,
        alphabet: Alphabet::Three,
        classes,
    })
}

/// Largest `p` over all classes at word length `m`.
pub fn max_p(m: usize) -> Result<usize> {
    max_p_with_threads(m, 0)
}

pub fn max_p_with_threads(m: usize, threads: usize) -> Result<usize> {
    let catalog = enumerate_classes_with_threads(m, threads)?;
    Ok(catalog.classes.iter().map(|c| c.p).max().unwrap_or(0))
}

/// Search-backed minimal 3-character word length for `p` generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinLength {
    Exact(usize),
    /// No length within the cap suffices; construction-based upper bounds
    /// may still exist beyond it.
    Unknown,
}

impl std::fmt::Display for MinLength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MinLength::Exact(m) => write!(f, "{m}"),
            MinLength::Unknown => write!(f, "unknown"),
        }
    }
}

/// Smallest `m <= m_cap` whose classification reaches `p` generators.
pub fn min_length_3char(p: usize, m_cap: usize) -> Result<MinLength> {
    for m in 1..=m_cap {
        if max_p(m)? >= p {
            return Ok(MinLength::Exact(m));
        }
    }
    Ok(MinLength::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::{equivalent, is_simple};

    fn matrix(words: &str) -> WordMatrix {
        WordMatrix::parse_rows(words).unwrap()
    }

    #[test]
    fn graph_shapes() {
        let g1 = build_graph(1).unwrap();
        assert_eq!(g1.vertex_count(), 2);
        assert_eq!(g1.degree(0), 1);

        let g2 = build_graph(2).unwrap();
        assert_eq!(g2.vertex_count(), 8);
        let xx = g2
            .words
            .iter()
            .position(|w| w.to_string() == "XX")
            .unwrap();
        assert_eq!(g2.degree(xx), 4);

        assert_eq!(build_graph(3).unwrap().vertex_count(), 26);
        assert!(matches!(build_graph(9), Err(Error::CapExceeded { .. })));
        assert!(matches!(build_graph(0), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn vertex_order_is_packed_ascending() {
        let g = build_graph(2).unwrap();
        let listed: Vec<String> = g.words.iter().map(|w| w.to_string()).collect();
        assert_eq!(
            listed,
            ["IX", "IZ", "XI", "XX", "XZ", "ZI", "ZX", "ZZ"]
        );
    }

    #[test]
    fn single_letter_catalog() {
        let catalog = enumerate_classes(1).unwrap();
        assert_eq!(catalog.classes.len(), 1);
        assert_eq!(catalog.classes[0].p, 2);
        assert_eq!(catalog.classes[0].representative, matrix("X Z"));
    }

    #[test]
    fn two_letter_catalog() {
        let catalog = enumerate_classes(2).unwrap();
        assert_eq!(catalog.classes.len(), 1);
        assert_eq!(catalog.classes[0].p, 3);
        assert!(equivalent(
            &catalog.classes[0].representative,
            &matrix("XX ZX IZ")
        ));
    }

    #[test]
    fn three_letter_catalog_matches_known_classes() {
        let catalog = enumerate_classes(3).unwrap();
        let ps: Vec<usize> = catalog.classes.iter().map(|c| c.p).collect();
        assert_eq!(ps, vec![5, 4, 4]);
        let five = matrix("XXX XIZ IZX ZXI ZZZ");
        let four_alpha = matrix("XXX XXZ XZI ZII");
        let four_beta = matrix("XXI XZI ZIX ZIZ");
        assert!(equivalent(&catalog.classes[0].representative, &five));
        let reps: Vec<&WordMatrix> = catalog.classes[1..]
            .iter()
            .map(|c| &c.representative)
            .collect();
        assert!(reps.iter().any(|r| equivalent(r, &four_alpha)));
        assert!(reps.iter().any(|r| equivalent(r, &four_beta)));
        for entry in &catalog.classes {
            assert!(is_simple(&entry.representative));
            let (maximal, _) = entry
                .representative
                .is_maximally_extended(Alphabet::Three)
                .unwrap();
            assert!(maximal);
        }
    }

    #[test]
    fn catalog_is_thread_count_independent() {
        let one = enumerate_classes_with_threads(3, 1).unwrap();
        let four = enumerate_classes_with_threads(3, 4).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn max_p_small() {
        assert_eq!(max_p(1).unwrap(), 2);
        assert_eq!(max_p(2).unwrap(), 3);
        assert_eq!(max_p(3).unwrap(), 5);
    }

    #[test]
    fn min_length_small() {
        assert_eq!(min_length_3char(2, 3).unwrap(), MinLength::Exact(1));
        assert_eq!(min_length_3char(3, 3).unwrap(), MinLength::Exact(2));
        assert_eq!(min_length_3char(4, 3).unwrap(), MinLength::Exact(3));
        assert_eq!(min_length_3char(5, 3).unwrap(), MinLength::Exact(3));
        assert_eq!(min_length_3char(6, 3).unwrap(), MinLength::Unknown);
    }
}
