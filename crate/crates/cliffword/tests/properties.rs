//! Property tests and independent-oracle cross-checks that back the unit
//! suites: parity rules vs. realizations, group-move invariance, and a
//! no-symmetry clique enumeration (petgraph's Bron-Kerbosch) replaying the
//! classification without isomorph rejection.

use std::collections::HashSet;

use petgraph::algo::maximal_cliques::maximal_cliques;
use petgraph::graph::UnGraph;
use proptest::prelude::*;
use rand::seq::SliceRandom;

use cliffword::catalog::{parse_catalog, render_catalog, CatalogFormat};
use cliffword::equivalence::{
    apply_move, canonical_form, equivalent, invariant_profile, is_simple, simplify, GroupMove,
};
use cliffword::oracle;
use cliffword::search::{build_graph, enumerate_classes, enumerate_classes_with_threads};
use cliffword::{Alphabet, Character, Word, WordMatrix};

fn word_strategy(m: usize, alphabet: Alphabet) -> impl Strategy<Value = Word> {
    let letters = alphabet.letters().to_vec();
    prop::collection::vec(0..letters.len(), m)
        .prop_map(move |idx| Word::new(&idx.iter().map(|&i| letters[i]).collect::<Vec<_>>()).unwrap())
}

proptest! {
    #[test]
    fn anticommutation_is_symmetric_and_irreflexive(
        m in 1usize..=8,
        seed in any::<u64>(),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let letters = Alphabet::Four.letters();
        let random_word = |rng: &mut rand::rngs::StdRng| {
            let ls: Vec<Character> = (0..m).map(|_| letters[rng.random_range(0..4)]).collect();
            Word::new(&ls).unwrap()
        };
        let w1 = random_word(&mut rng);
        let w2 = random_word(&mut rng);
        prop_assert_eq!(w1.anticommutes(w2), w2.anticommutes(w1));
        prop_assert!(!w1.anticommutes(w1));
    }

    #[test]
    fn parity_rule_matches_oracle(
        (w1, w2) in (1usize..=4).prop_flat_map(|m| {
            (word_strategy(m, Alphabet::Four), word_strategy(m, Alphabet::Four))
        })
    ) {
        let g1 = oracle::realize(w1).unwrap();
        let g2 = oracle::realize(w2).unwrap();
        prop_assert_eq!(w1.anticommutes(w2), g1.anticommutes(&g2));
        prop_assert_eq!(g1.mul(&g1).as_scaled_identity(), Some(w1.square_sign()));
    }

    #[test]
    fn realization_multiplicative_on_concatenation(
        w1 in (1usize..=3).prop_flat_map(|m| word_strategy(m, Alphabet::Four)),
        w2 in (1usize..=3).prop_flat_map(|m| word_strategy(m, Alphabet::Four)),
    ) {
        let whole = oracle::realize(w1.concat(w2).unwrap()).unwrap();
        let parts = oracle::realize(w1).unwrap().kron(&oracle::realize(w2).unwrap());
        prop_assert_eq!(whole, parts);
    }
}

fn greedy_basis(m: usize, seed: u64) -> WordMatrix {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let graph = build_graph(m).unwrap();
    let mut ids: Vec<usize> = (0..graph.vertex_count()).collect();
    ids.shuffle(&mut rng);
    let mut rows: Vec<Word> = Vec::new();
    for v in ids {
        let w = graph.word(v);
        if rows.iter().all(|&r| r.anticommutes(w)) {
            rows.push(w);
        }
    }
    WordMatrix::new(rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_move_sequences_preserve_class(
        m in 1usize..=4,
        seed in any::<u64>(),
        moves in prop::collection::vec(0u8..3, 1..6),
    ) {
        use rand::{Rng, SeedableRng};
        let basis = greedy_basis(m, seed);
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed ^ 0xabcd);
        let mut current = basis.clone();
        for kind in moves {
            let mv = match kind {
                0 => {
                    let mut perm: Vec<usize> = (0..current.p()).collect();
                    perm.shuffle(&mut rng);
                    GroupMove::RowPermutation(perm)
                }
                1 => {
                    let mut perm: Vec<usize> = (0..current.m()).collect();
                    perm.shuffle(&mut rng);
                    GroupMove::ColumnPermutation(perm)
                }
                _ => GroupMove::ColumnTransmutation(rng.random_range(0..current.m())),
            };
            current = apply_move(&current, &mv).unwrap();
        }
        prop_assert_eq!(invariant_profile(&current), invariant_profile(&basis));
        prop_assert!(equivalent(&current, &basis));
    }

    #[test]
    fn extensions_extend_validly(m in 1usize..=4, seed in any::<u64>()) {
        let basis = greedy_basis(m, seed);
        // drop the last row to force extensions to exist
        if basis.p() > 1 {
            let reduced = WordMatrix::new(basis.rows()[..basis.p() - 1].to_vec()).unwrap();
            let (maximal, extensions) = reduced.is_maximally_extended(Alphabet::Three).unwrap();
            prop_assert!(!maximal);
            for w in extensions {
                reduced.with_row(w).unwrap().verify().unwrap();
            }
        }
    }

    #[test]
    fn simplify_is_idempotent_and_faithful(m in 1usize..=4, seed in any::<u64>()) {
        let basis = greedy_basis(m, seed);
        let simple = match simplify(&basis) {
            Ok(s) => s,
            Err(_) => return Ok(()), // p=1 all-erasable case
        };
        prop_assert!(is_simple(&simple));
        prop_assert_eq!(simplify(&simple).unwrap(), simple.clone());
        prop_assert_eq!(basis.verify().unwrap(), simple.verify().unwrap());
    }
}

/// Every row of a verified Euclidean basis has an even A-count.
#[test]
fn euclidean_rows_have_even_a_count() {
    for rows in ["IX IZ AA", "XX ZX IZ", "IXX IZX AAX IIZ"] {
        let m = WordMatrix::parse_rows(rows).unwrap();
        let report = m.verify().unwrap();
        if report.euclidean {
            assert!(m.rows().iter().all(|w| w.a_count() % 2 == 0));
        }
    }
}

/// Classify by brute force: enumerate all maximal cliques with petgraph's
/// Bron-Kerbosch, filter simple ones, reduce by canonical form.
fn classify_without_symmetry(m: usize) -> Vec<(usize, Vec<Word>)> {
    let graph = build_graph(m).unwrap();
    let n = graph.vertex_count();
    let mut pg = UnGraph::<u32, ()>::new_undirected();
    let nodes: Vec<_> = (0..n).map(|v| pg.add_node(v as u32)).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if graph.word(i).anticommutes(graph.word(j)) {
                pg.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    let mut seen: HashSet<Vec<Word>> = HashSet::new();
    for clique in maximal_cliques(&pg) {
        let rows: Vec<Word> = clique.iter().map(|&ix| graph.word(ix.index())).collect();
        let matrix = WordMatrix::new(rows).unwrap();
        if !is_simple(&matrix) {
            continue;
        }
        seen.insert(canonical_form(&matrix).matrix.rows().to_vec());
    }
    let mut classes: Vec<(usize, Vec<Word>)> =
        seen.into_iter().map(|rows| (rows.len(), rows)).collect();
    classes.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    classes
}

#[test]
fn isomorph_rejection_is_lossless() {
    for m in 1..=4 {
        let catalog = enumerate_classes(m).unwrap();
        let organized: Vec<(usize, Vec<Word>)> = catalog
            .classes
            .iter()
            .map(|c| (c.p, c.representative.rows().to_vec()))
            .collect();
        assert_eq!(
            organized,
            classify_without_symmetry(m),
            "orderly and no-symmetry classifications differ at m={m}"
        );
    }
}

#[test]
fn clique_basis_correspondence_is_exhaustive_at_small_m() {
    for m in 1..=3 {
        let graph = build_graph(m).unwrap();
        let n = graph.vertex_count();
        let mut pg = UnGraph::<u32, ()>::new_undirected();
        let nodes: Vec<_> = (0..n).map(|v| pg.add_node(v as u32)).collect();
        for i in 0..n {
            for j in (i + 1)..n {
                if graph.word(i).anticommutes(graph.word(j)) {
                    pg.add_edge(nodes[i], nodes[j], ());
                }
            }
        }
        for clique in maximal_cliques(&pg) {
            let rows: Vec<Word> = clique.iter().map(|&ix| graph.word(ix.index())).collect();
            let matrix = WordMatrix::new(rows).unwrap();
            let report = matrix.verify().unwrap();
            assert_eq!(report.signature.q, 0);
            let (maximal, _) = matrix.is_maximally_extended(Alphabet::Three).unwrap();
            assert!(maximal, "maximal clique fails maximal extension: {matrix}");
        }
    }
}

#[test]
fn catalogs_are_deterministic_across_runs_and_threads() {
    let a = render_catalog(&enumerate_classes_with_threads(4, 1).unwrap(), CatalogFormat::Structured);
    let b = render_catalog(&enumerate_classes_with_threads(4, 1).unwrap(), CatalogFormat::Structured);
    let c = render_catalog(&enumerate_classes_with_threads(4, 3).unwrap(), CatalogFormat::Structured);
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn max_p_is_monotone_up_to_m5() {
    let mut previous = 0;
    for m in 1..=5 {
        let catalog = enumerate_classes(m).unwrap();
        let max = catalog.classes.iter().map(|c| c.p).max().unwrap();
        assert!(max >= previous, "max_p({m}) = {max} dropped below {previous}");
        previous = max;
    }
}

#[test]
fn structured_catalog_round_trips() {
    for m in 1..=4 {
        let catalog = enumerate_classes(m).unwrap();
        let text = render_catalog(&catalog, CatalogFormat::Structured);
        assert_eq!(parse_catalog(&text).unwrap(), catalog);
    }
}
