mod common;

use std::collections::HashSet;
use std::sync::Arc;

use chromafun::graph::{is_surjective_hom, validate_hom, GraphHom};
use chromafun::infinite::{
    build_transfer_digraph, count_colorings, covering_walk_countable, decide_equivalent_countable,
    distance_hom_countable, fixture, integer_tree, is_proper_on_prefix, refine_coloring, strip_fixtures, Cardinality,
    CountableEquivalence, CountableGraph, StripSpec, Witness,
};
use chromafun::partitions::{enumerate_stable_partitions, pullback_partition};
use chromafun::FiniteGraph;
use num_bigint::BigUint;
use proptest::prelude::*;

const PROBE: usize = 200;

/// Edge list of the head plus `cells` cells, written out from the strip's
/// fields.
fn unrolled_edges(s: &StripSpec, cells: usize) -> (usize, Vec<(usize, usize)>) {
    let h = s.head.as_ref().map_or(0, |g| g.vertex_count());
    let k = s.cell_size;
    let mut edges = Vec::new();
    if let Some(head) = &s.head {
        edges.extend(head.edges());
        if cells > 0 {
            for &(a, b) in &s.inter {
                edges.push((h - k + a, h + b));
            }
        }
    }
    for t in 0..cells {
        for &(a, b) in &s.intra {
            edges.push((h + t * k + a, h + t * k + b));
        }
        if t + 1 < cells {
            for &(a, b) in &s.inter {
                edges.push((h + t * k + a, h + (t + 1) * k + b));
            }
        }
    }
    (h + cells * k, edges)
}

fn specs_under_test() -> Vec<(String, StripSpec)> {
    let mut out: Vec<(String, StripSpec)> = strip_fixtures().into_iter().map(|(n, s)| (n.to_string(), s)).collect();
    let headed = CountableGraph::natural_tree_strip().with_head(FiniteGraph::star(2)).unwrap();
    out.push(("natural tree with a head".into(), headed));
    out
}

#[test]
fn transfer_counts_match_brute_force() {
    for (name, s) in specs_under_test() {
        for n in 0..=4 {
            let td = build_transfer_digraph(&s, n).unwrap();
            for cells in 0..=6 {
                let (v, edges) = unrolled_edges(&s, cells);
                let brute = common::count_colorings(v, &edges, n);
                assert_eq!(td.path_count(cells), BigUint::from(brute), "{name}, n = {n}, {cells} cells");
            }
        }
    }
}

#[test]
fn ladder_digraph_matches_length_two_truncations() {
    let s = fixture("fig3-g2").unwrap().as_strip().unwrap();
    let td = build_transfer_digraph(&s, 3).unwrap();
    let (v1, e1) = unrolled_edges(&s, 1);
    let (v2, e2) = unrolled_edges(&s, 2);
    assert_eq!(td.state_count() as u64, common::count_colorings(v1, &e1, 3));
    assert_eq!(td.arc_count() as u64, common::count_colorings(v2, &e2, 3));
}

fn check_witness(name: &str, s: &StripSpec, n: usize) {
    let g = CountableGraph::Strip(s.clone());
    let analysis = build_transfer_digraph(s, n).unwrap().analyze();
    match (&analysis.cardinality, &analysis.witness) {
        (Cardinality::Finite(c), Witness::Enumerated { colorings, complete }) => {
            assert!(*complete);
            assert_eq!(BigUint::from(colorings.len()), *c, "{name}, n = {n}");
            let mut distinct = HashSet::new();
            for col in colorings {
                let colors: Vec<usize> = (0..PROBE as u64).map(|v| col.color_of(s, v)).collect();
                assert!(colors.iter().all(|&x| x < n));
                assert!(is_proper_on_prefix(&g, &|v| colors[v as usize], PROBE), "{name}, n = {n}");
                distinct.insert(colors);
            }
            assert_eq!(distinct.len(), colorings.len());
        }
        (Cardinality::Continuum, Witness::Branching { colorings, differ_at, .. }) => {
            let [a, b] = colorings;
            for col in [a, b] {
                assert!(is_proper_on_prefix(&g, &|v| col.color_of(s, v), PROBE), "{name}, n = {n}");
            }
            for t in -10..*differ_at {
                assert_eq!(a.cell(t), b.cell(t));
            }
            assert_ne!(a.cell(*differ_at), b.cell(*differ_at));
        }
        (c, w) => panic!("{name}, n = {n}: {c} with witness {w:?}"),
    }
}

#[test]
fn classifications_come_with_checkable_witnesses() {
    for (name, s) in specs_under_test() {
        for n in 1..=4 {
            check_witness(&name, &s, n);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_strips_have_sound_witnesses(
        cell in 1usize..4,
        intra_bits in proptest::collection::vec(any::<bool>(), 3),
        inter_bits in proptest::collection::vec(any::<bool>(), 9),
        two_way in any::<bool>(),
        n in 1usize..4,
    ) {
        let intra: Vec<(usize, usize)> = [(0, 1), (0, 2), (1, 2)]
            .into_iter()
            .zip(intra_bits)
            .filter(|&((a, b), on)| on && a < cell && b < cell)
            .map(|(e, _)| e)
            .collect();
        let inter: Vec<(usize, usize)> = (0..3)
            .flat_map(|a| (0..3).map(move |b| (a, b)))
            .zip(inter_bits)
            .filter(|&((a, b), on)| on && a < cell && b < cell)
            .map(|(e, _)| e)
            .collect();
        let s = StripSpec::new(cell, intra, inter, two_way).unwrap();
        let analysis = build_transfer_digraph(&s, n).unwrap().analyze();
        let countable = matches!(analysis.cardinality, Cardinality::Aleph0);
        let exit_witness = matches!(analysis.witness, Witness::Exit { .. });
        prop_assert_eq!(countable, exit_witness);
        if !matches!(analysis.cardinality, Cardinality::Aleph0) {
            check_witness("random", &s, n);
        }
        // A finite answer can never exceed the count on any truncation.
        if let Cardinality::Finite(c) = &analysis.cardinality {
            let (v, edges) = unrolled_edges(&s, 5);
            prop_assert!(*c <= BigUint::from(common::count_colorings(v, &edges, n)));
        }
    }

    /// Distinct subsets of the even vertices give distinct refinements.
    #[test]
    fn refinement_is_injective(a in proptest::collection::vec(any::<bool>(), 50), b in proptest::collection::vec(any::<bool>(), 50)) {
        prop_assume!(a != b);
        let t = CountableGraph::NaturalTree;
        let make = |bits: Vec<bool>| {
            refine_coloring(
                &t,
                Arc::new(|v| (v % 2) as usize),
                2,
                0,
                Arc::new(move |v| v % 2 == 0 && bits.get((v / 2) as usize).copied().unwrap_or(false)),
                PROBE,
            )
            .unwrap()
        };
        let (ra, rb) = (make(a), make(b));
        prop_assert!(is_proper_on_prefix(&t, &|v| ra.color(v), PROBE));
        prop_assert!(is_proper_on_prefix(&t, &|v| rb.color(v), PROBE));
        prop_assert!((0..PROBE as u64).any(|v| ra.color(v) != rb.color(v)));
    }
}

#[test]
fn surjection_route_agrees_with_counting() {
    let tree = CountableGraph::NaturalTree;
    let line = CountableGraph::Strip(integer_tree());
    let wheel = CountableGraph::NaturalWheel;

    for target in [&line, &wheel] {
        let w = covering_walk_countable(target, 400, 10_000).unwrap();
        assert!(w.walk.windows(2).all(|p| target.adjacent(p[0], p[1])));
        assert!(w.covered >= 20, "{}", w.covered);
    }
    let back = distance_hom_countable(&line, 0, PROBE, 10_000).unwrap();
    assert!(back.surjective);
    for u in 0..PROBE as u64 {
        for v in line.neighbors_below(u, PROBE as u64) {
            assert_eq!(back.distances[u as usize].abs_diff(back.distances[v as usize]), 1);
        }
    }
    // Mutual surjections between the tree and the line: both routes agree.
    assert_eq!(decide_equivalent_countable(&tree, &line).unwrap(), CountableEquivalence::Equivalent);
    // The wheel is bounded, so it only has the covering walk; counting still
    // declares it equivalent.
    assert!(!distance_hom_countable(&wheel, 0, PROBE, 10_000).unwrap().surjective);
    assert_eq!(decide_equivalent_countable(&tree, &wheel).unwrap(), CountableEquivalence::Equivalent);
    assert_eq!(count_colorings(&line, 2).unwrap(), Cardinality::finite(2));
}

#[test]
fn surjections_pull_stable_partitions_back_injectively() {
    // Distance from the middle of P_9 onto P_5, and a walk from P_9 onto the star.
    let p9 = FiniteGraph::path(9);
    let p5 = FiniteGraph::path(5);
    let fold = GraphHom::new(p9.clone(), p5.clone(), (0..9).map(|v: usize| v.abs_diff(4)).collect());
    let star = FiniteGraph::star(4);
    let walk = GraphHom::new(p9.clone(), star.clone(), vec![1, 0, 2, 0, 3, 0, 4, 0, 1]);
    for h in [fold, walk] {
        assert!(validate_hom(&h).unwrap() && is_surjective_hom(&h));
        let parts = enumerate_stable_partitions(&h.target, 10).unwrap();
        let pulled: HashSet<Vec<usize>> = parts
            .iter()
            .map(|p| pullback_partition(&h, p).unwrap().labels().to_vec())
            .collect();
        assert_eq!(pulled.len(), parts.len());
    }
}
