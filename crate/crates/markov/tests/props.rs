use markov::{markov_tree, match_geometric, mutate_triple, triple_of_triangle, MarkovTriple};
use proptest::prelude::*;

fn arb_path(max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..3, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Any mutation path keeps the triple on the Markov surface, and the
    /// per-position lockstep with triangle weights never breaks.
    #[test]
    fn lockstep_holds_on_random_paths(path in arb_path(6)) {
        let m = match_geometric(&path).unwrap();
        prop_assert!(m.matches, "path {:?}: triple {:?} vs weights {:?}", path, m.triple, m.weights);
        let triple = MarkovTriple(m.triple.clone());
        prop_assert!(triple.is_markov());
    }

    /// Reading the triple back off the triangle agrees with the carried one.
    #[test]
    fn readback_agrees_with_walk(path in arb_path(6)) {
        let m = match_geometric(&path).unwrap();
        let read = triple_of_triangle(&m.triangle).unwrap();
        prop_assert_eq!(read.sorted_desc(), MarkovTriple(m.triple).sorted_desc());
    }

    /// Triple mutation is an involution position by position.
    #[test]
    fn triple_mutation_involutive(path in arb_path(8), pos in 0usize..3) {
        let mut t = MarkovTriple::from_ints(1, 1, 1).unwrap();
        for &p in &path {
            t = mutate_triple(&t, p).unwrap();
        }
        let once = mutate_triple(&t, pos).unwrap();
        prop_assert!(once.is_markov());
        prop_assert_eq!(mutate_triple(&once, pos).unwrap(), t);
    }
}

/// Node counts: degenerate top (1, 1, 1, 2), then each node sprouts two
/// children, so level d >= 3 holds 2^(d-2) triples.
#[test]
fn level_sizes() {
    let levels = markov_tree(7).levels();
    let sizes: Vec<usize> = levels.iter().map(|l| l.len()).collect();
    assert_eq!(sizes, vec![1, 1, 1, 2, 4, 8, 16, 32]);
    for level in &levels {
        let mut seen = level.clone();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), level.len(), "duplicate triple within a level");
    }
}
