//! Graceful labellings checked against an independent census.
//!
//! The oracle enumerates injective label tuples directly and checks edge
//! differences by hand: a labelling of a graph with q edges is graceful when
//! the q absolute differences are pairwise distinct (hence exactly 1..q).

use itertools::Itertools;
use symsearch::csp::{enumerate, solve, SearchConfig, SearchOutcome};
use symsearch::problems::{GracefulSpec, Graph, ProblemModel};
use symsearch::Assignment;

/// All graceful labellings of `graph` as vertex-indexed label vectors, in
/// lexicographic order.
fn census(graph: &Graph) -> Vec<Vec<i64>> {
    let q = graph.edge_count();
    (0..=q as i64)
        .permutations(graph.vertex_count())
        .filter(|labels| is_graceful(graph, labels))
        .collect()
}

fn is_graceful(graph: &Graph, labels: &[i64]) -> bool {
    let q = graph.edge_count();
    let mut seen = vec![false; q + 1];
    for &(u, v) in graph.edges() {
        let diff = (labels[u] - labels[v]).unsigned_abs() as usize;
        if diff == 0 || diff > q || seen[diff] {
            return false;
        }
        seen[diff] = true;
    }
    true
}

fn engine_solutions(model: &ProblemModel) -> Vec<Vec<i64>> {
    let result = enumerate(&model.build(), &SearchConfig::default()).expect("search runs");
    assert_eq!(result.outcome, SearchOutcome::Complete);
    result
        .solutions
        .iter()
        .map(|a| a.values().expect("solutions are total"))
        .collect()
}

#[test]
fn cycle_census_counts_follow_the_residue_pattern() {
    let counts: Vec<usize> = (3..=8)
        .map(|n| census(&Graph::cycle(n).expect("cycle builds")).len())
        .collect();
    assert_eq!(counts, [12, 16, 0, 0, 168, 384]);
    for (n, count) in (3..=8).zip(&counts) {
        let graceful_expected = n % 4 == 0 || n % 4 == 3;
        assert_eq!(*count > 0, graceful_expected, "cycle of length {n}");
    }
}

#[test]
fn engine_matches_cycle_census_in_order() {
    for n in 3..=8 {
        let model = ProblemModel::Graceful(GracefulSpec::cycle(n).expect("cycle builds"));
        let expected = census(&Graph::cycle(n).expect("cycle builds"));
        assert_eq!(engine_solutions(&model), expected, "cycle of length {n}");
    }
}

#[test]
fn first_cycle_witnesses() {
    let first = |n: usize| census(&Graph::cycle(n).expect("cycle builds"))[0].clone();
    assert_eq!(first(3), vec![0, 1, 3]);
    assert_eq!(first(4), vec![0, 2, 1, 4]);
    assert_eq!(first(7), vec![0, 3, 4, 2, 6, 1, 7]);
    assert_eq!(first(8), vec![0, 3, 4, 6, 2, 7, 1, 8]);
}

#[test]
fn wheel_three_census_and_engine_agree() {
    let graph = Graph::wheel(3).expect("wheel builds");
    let expected = census(&graph);
    assert_eq!(expected.len(), 48);
    assert_eq!(expected[0], vec![0, 1, 4, 6]);

    let model = ProblemModel::Graceful(GracefulSpec::wheel(3).expect("wheel builds"));
    assert_eq!(engine_solutions(&model), expected);
}

#[test]
fn double_wheel_three_has_no_graceful_labelling() {
    let graph = Graph::double_wheel(3).expect("double wheel builds");
    assert_eq!(graph.vertex_count(), 7);
    assert_eq!(graph.edge_count(), 12);
    assert!(census(&graph).is_empty());

    let model = ProblemModel::Graceful(GracefulSpec::double_wheel(3).expect("double wheel builds"));
    assert!(engine_solutions(&model).is_empty());
}

#[test]
fn double_wheel_four_is_graceful() {
    let model = ProblemModel::Graceful(GracefulSpec::double_wheel(4).expect("double wheel builds"));
    let result = solve(&model.build(), &SearchConfig::default()).expect("search runs");
    let witness = result.solutions.first().expect("a labelling exists");
    let values = witness.values().expect("total");
    assert!(model.verify_values(&values).expect("verifies").is_accepted());
    assert!(is_graceful(&Graph::double_wheel(4).expect("builds"), &values));
}

#[test]
fn catalogue_symmetries_permute_the_census() {
    for spec in [
        GracefulSpec::cycle(7).expect("cycle builds"),
        GracefulSpec::wheel(3).expect("wheel builds"),
    ] {
        let set: std::collections::BTreeSet<Assignment> = census(spec.graph())
            .iter()
            .map(|labels| Assignment::total(labels))
            .collect();
        let model = ProblemModel::Graceful(spec);
        for (name, sigma) in model.catalog().iter() {
            assert_eq!(
                sigma.apply_to_set(&set).expect("applies"),
                set,
                "catalogue entry {name} of {}",
                model.describe()
            );
        }
    }
}

#[test]
fn complement_fixes_gracefulness_on_a_custom_graph() {
    // A star with four leaves: graceful labellings come in complement pairs.
    let graph = Graph::new(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]).expect("star builds");
    let labellings = census(&graph);
    assert!(!labellings.is_empty());
    let q = graph.edge_count() as i64;
    let set: std::collections::BTreeSet<Vec<i64>> = labellings.iter().cloned().collect();
    for labels in &labellings {
        let complement: Vec<i64> = labels.iter().map(|v| q - v).collect();
        assert!(set.contains(&complement), "complement of {labels:?}");
    }
}
