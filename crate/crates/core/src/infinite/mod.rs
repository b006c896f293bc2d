//! Countable graphs: periodic strips, the natural tree and wheel, and the
//! complete graph on `ℕ` minus an edge.
//!
//! Coloring sets are classified as finite (with the exact count), countably
//! infinite or of the size of the continuum. Strips go through their
//! transfer digraphs; the wheel and the almost complete graph are handled in
//! closed form.

mod maps;
mod strip;
mod transfer;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use maps::{
    covering_walk_countable, covering_walk_finite, distance_hom_countable, distance_hom_finite, is_proper_on_prefix,
    refine_coloring, CountableDistanceMap, CoveringWalk, FiniteDistanceMap, RefinedColoring, VertexColoring,
    VertexSubset, DEFAULT_NODE_CAP, DEFAULT_PROBE_BOUND,
};
pub use strip::{
    fixture, integer_tree, strip_fixtures, triangle_ladder, triangulated_grid, CountableGraph, StripSpec, StripVertex,
    FIXTURE_NAMES,
};
pub use transfer::{
    branching_pair_at, build_transfer_digraph, build_transfer_digraph_with_budget, Cardinality, CellColoring,
    PeriodicColoring, StripAnalysis, TransferDigraph, Witness, DEFAULT_STATE_BUDGET, WITNESS_LIMIT,
};

/// Cardinality of `χ(g, [n])` together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub colors: usize,
    pub cardinality: Cardinality,
    /// Present for strips (and the natural tree).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analysis: Option<StripAnalysis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<String>,
}

pub fn count_colorings(g: &CountableGraph, n: usize) -> Result<Cardinality> {
    Ok(analyze_colorings(g, n, DEFAULT_STATE_BUDGET)?.cardinality)
}

pub fn analyze_colorings(g: &CountableGraph, n: usize, state_budget: usize) -> Result<CountReport> {
    if let Some(spec) = g.as_strip() {
        let analysis = build_transfer_digraph_with_budget(&spec, n, state_budget)?.analyze();
        return Ok(CountReport {
            colors: n,
            cardinality: analysis.cardinality.clone(),
            analysis: Some(analysis),
            closed_form: None,
        });
    }
    let (cardinality, note) = match g {
        CountableGraph::NaturalWheel => {
            // The center takes any of n colors; each of the infinitely many
            // spokes then has n - 1 choices on its own.
            let c = match n {
                0 | 1 => Cardinality::finite(0),
                2 => Cardinality::finite(2),
                _ => Cardinality::Continuum,
            };
            (c, format!("{n} center colors, each spoke independently one of {}", n.saturating_sub(1)))
        }
        CountableGraph::CompleteMinusEdge => (
            Cardinality::finite(0),
            "an infinite clique remains after deleting one edge".to_string(),
        ),
        CountableGraph::Strip(_) | CountableGraph::NaturalTree => unreachable!("handled as strips"),
    };
    Ok(CountReport {
        colors: n,
        cardinality,
        analysis: None,
        closed_form: Some(note),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChromaticNumber {
    Finite(usize),
    Infinite,
}

impl fmt::Display for ChromaticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChromaticNumber::Finite(n) => write!(f, "{n}"),
            ChromaticNumber::Infinite => f.write_str("∞"),
        }
    }
}

/// Least `n >= 1` for which `χ(g, [n])` is nonempty.
pub fn chromatic_number_countable(g: &CountableGraph) -> Result<ChromaticNumber> {
    let bound = match g {
        CountableGraph::CompleteMinusEdge => return Ok(ChromaticNumber::Infinite),
        CountableGraph::NaturalWheel => 2,
        CountableGraph::NaturalTree => 2,
        CountableGraph::Strip(s) => {
            // Greedy coloring needs at most max degree + 1 colors; the
            // degree pattern repeats from the second cell on.
            let probe = (s.head_size() + 3 * s.cell_size) as u64;
            (0..probe).map(|v| s.neighbors(v).len()).max().unwrap_or(0) + 1
        }
    };
    for n in 1..=bound {
        if !count_colorings(g, n)?.is_zero() {
            return Ok(ChromaticNumber::Finite(n));
        }
    }
    Err(Error::Structural(format!("no coloring with {bound} colors despite the degree bound")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountableEquivalence {
    Equivalent,
    NotEquivalent,
    /// One of the graphs has infinite chromatic number, where equal counts
    /// no longer decide equivalence.
    Inapplicable,
}

/// Equivalence of countable graphs with finite chromatic number: the same
/// chromatic number `n` and the same cardinality of `χ(·, [n])`.
pub fn decide_equivalent_countable(g1: &CountableGraph, g2: &CountableGraph) -> Result<CountableEquivalence> {
    let (ChromaticNumber::Finite(n1), ChromaticNumber::Finite(n2)) =
        (chromatic_number_countable(g1)?, chromatic_number_countable(g2)?)
    else {
        return Ok(CountableEquivalence::Inapplicable);
    };
    if n1 != n2 {
        return Ok(CountableEquivalence::NotEquivalent);
    }
    Ok(if count_colorings(g1, n1)? == count_colorings(g2, n2)? {
        CountableEquivalence::Equivalent
    } else {
        CountableEquivalence::NotEquivalent
    })
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `#St_k(g)`, the number of partitions of the vertices into `k`
/// independent sets.
///
/// Up to the chromatic number `n` it is recovered from
/// `#χ(g, [k]) = Σ_{i <= k} C(k, i) · i! · #St_i(g)`; above `n` it is the
/// continuum, since an infinite color class can be split along any of its
/// subsets.
pub fn st_cardinality(g: &CountableGraph, k: usize) -> Result<Cardinality> {
    if k == 0 {
        return Err(Error::Domain("an infinite graph has no partition into 0 blocks".into()));
    }
    let ChromaticNumber::Finite(n) = chromatic_number_countable(g)? else {
        return Err(Error::Precondition(format!("{g} has infinite chromatic number")));
    };
    if k > n {
        return Ok(Cardinality::Continuum);
    }
    let counts = (1..=k).map(|i| count_colorings(g, i)).collect::<Result<Vec<_>>>()?;
    if let Some(top) = counts.iter().filter(|c| !matches!(c, Cardinality::Finite(_))).max() {
        return Ok(top.clone());
    }
    let mut st: Vec<BigInt> = vec![BigInt::zero()];
    for i in 1..=k {
        let Cardinality::Finite(c) = &counts[i - 1] else { unreachable!() };
        let mut rest = BigInt::from(c.clone());
        for (j, s) in st.iter().enumerate().skip(1) {
            rest -= binomial(i, j) * factorial(j) * s;
        }
        let f = factorial(i);
        if rest.is_negative() || !(&rest % &f).is_zero() {
            return Err(Error::Structural(format!("coloring counts of {g} do not invert at k = {i}")));
        }
        st.push(rest / f);
    }
    Ok(Cardinality::Finite(st[k].to_biguint().expect("checked nonnegative")))
}

/// Why the complete graph on an infinite set `X` and the same graph minus
/// one edge have the same chromatic number and the same number of
/// `X`-colorings but non-isomorphic coloring functors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompleteMinusEdgeExplanation {
    pub chromatic_number: String,
    pub colorings_with_x: String,
    pub stable_partitions: Vec<String>,
    pub decomposition: String,
    pub equivalent_to_complete: bool,
    pub reason: String,
}

pub fn complete_minus_edge_explanation() -> CompleteMinusEdgeExplanation {
    CompleteMinusEdgeExplanation {
        chromatic_number: "#X for both K_X and K_X′".into(),
        colorings_with_x: "2^#X for both".into(),
        stable_partitions: vec![
            "all singletons {x}".into(),
            "singletons {x} for x ≠ x0, x1, together with {x0, x1}".into(),
        ],
        decomposition: "χ(K_X′, ·) ≅ χ(K_X, ·) ⊔ χ(K_X, ·)".into(),
        equivalent_to_complete: false,
        reason: "a coloring functor determines its stable partitions up to block sizes; K_X has one, K_X′ has two"
            .into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(name: &str) -> CountableGraph {
        fixture(name).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(count_colorings(&CountableGraph::NaturalTree, 2).unwrap(), Cardinality::finite(2));
        assert_eq!(count_colorings(&CountableGraph::NaturalTree, 3).unwrap(), Cardinality::Continuum);
        assert_eq!(count_colorings(&CountableGraph::NaturalWheel, 2).unwrap(), Cardinality::finite(2));
        assert_eq!(count_colorings(&CountableGraph::NaturalWheel, 3).unwrap(), Cardinality::Continuum);
        assert!(count_colorings(&CountableGraph::CompleteMinusEdge, 50).unwrap().is_zero());
    }

    #[test]
    fn chromatic_numbers() {
        let chi = |name| chromatic_number_countable(&named(name)).unwrap();
        assert_eq!(chi("natural-tree"), ChromaticNumber::Finite(2));
        assert_eq!(chi("natural-wheel"), ChromaticNumber::Finite(2));
        for g in ["fig3-g1", "fig3-g2", "fig3-g3"] {
            assert_eq!(chi(g), ChromaticNumber::Finite(3), "{g}");
        }
        assert_eq!(
            chromatic_number_countable(&CountableGraph::CompleteMinusEdge).unwrap(),
            ChromaticNumber::Infinite
        );
        let edgeless = CountableGraph::Strip(StripSpec::new(1, vec![], vec![], false).unwrap());
        assert_eq!(chromatic_number_countable(&edgeless).unwrap(), ChromaticNumber::Finite(1));
    }

    #[test]
    fn equivalences() {
        let eq = |a, b| decide_equivalent_countable(&named(a), &named(b)).unwrap();
        assert_eq!(eq("fig3-g2", "fig3-g3"), CountableEquivalence::Equivalent);
        assert_eq!(eq("fig3-g1", "fig3-g2"), CountableEquivalence::NotEquivalent);
        assert_eq!(eq("natural-tree", "natural-wheel"), CountableEquivalence::Equivalent);
        assert_eq!(eq("natural-tree", "natural-tree"), CountableEquivalence::Equivalent);
        assert_eq!(eq("natural-tree", "fig3-g2"), CountableEquivalence::NotEquivalent);
        assert_eq!(
            decide_equivalent_countable(&CountableGraph::CompleteMinusEdge, &CountableGraph::NaturalTree).unwrap(),
            CountableEquivalence::Inapplicable
        );
    }

    #[test]
    fn stable_partition_cardinalities() {
        let t = CountableGraph::NaturalTree;
        assert_eq!(st_cardinality(&t, 1).unwrap(), Cardinality::finite(0));
        assert_eq!(st_cardinality(&t, 2).unwrap(), Cardinality::finite(1));
        assert_eq!(st_cardinality(&t, 3).unwrap(), Cardinality::Continuum);
        // Six 3-colorings of the triangle strip: one partition into 3 blocks.
        assert_eq!(st_cardinality(&named("fig3-g2"), 3).unwrap(), Cardinality::finite(1));
        assert_eq!(st_cardinality(&named("fig3-g1"), 3).unwrap(), Cardinality::Continuum);
        assert!(st_cardinality(&t, 0).is_err());
        assert!(matches!(
            st_cardinality(&CountableGraph::CompleteMinusEdge, 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn explanation_mentions_two_summands() {
        let e = complete_minus_edge_explanation();
        assert_eq!(e.stable_partitions.len(), 2);
        assert!(!e.equivalent_to_complete);
    }
}
