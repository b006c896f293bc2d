//! Maps into and out of countable graphs: refined colorings, covering walks
//! from the natural tree, and distance maps onto it.

use std::sync::Arc;

use serde::Serialize;

use super::strip::CountableGraph;
use super::transfer::build_transfer_digraph;
use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, GraphHom};

/// Vertices `0..DEFAULT_PROBE_BOUND` are where "checked on a prefix" claims
/// are checked.
pub const DEFAULT_PROBE_BOUND: usize = 200;
/// Breadth-first searches in countable graphs stop after this many vertices.
pub const DEFAULT_NODE_CAP: usize = 100_000;

pub type VertexColoring = Arc<dyn Fn(u64) -> usize + Send + Sync>;
pub type VertexSubset = Arc<dyn Fn(u64) -> bool + Send + Sync>;

/// Whether `color` is a proper coloring on the subgraph induced by the
/// first `probe` vertices.
pub fn is_proper_on_prefix(g: &CountableGraph, color: &dyn Fn(u64) -> usize, probe: usize) -> bool {
    let colors: Vec<usize> = (0..probe as u64).map(color).collect();
    g.prefix_graph(probe)
        .edges()
        .into_iter()
        .all(|(u, v)| colors[u] != colors[v])
}

/// `c` with the class of `i0` split in two: vertices of the class inside
/// `subset` keep `i0`, the others get the new color `n`.
#[derive(Clone)]
pub struct RefinedColoring {
    base: VertexColoring,
    subset: VertexSubset,
    i0: usize,
    n: usize,
    pub probe_bound: usize,
}

impl RefinedColoring {
    pub fn color(&self, v: u64) -> usize {
        let c = (self.base)(v);
        if c == self.i0 && !(self.subset)(v) {
            self.n
        } else {
            c
        }
    }

    pub fn color_count(&self) -> usize {
        self.n + 1
    }
}

impl std::fmt::Debug for RefinedColoring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RefinedColoring")
            .field("i0", &self.i0)
            .field("n", &self.n)
            .field("probe_bound", &self.probe_bound)
            .finish()
    }
}

/// Checks `c` on the first `probe` vertices (proper, colors below `n`, the
/// class of `i0` still occurring in the second half of the window, `subset`
/// inside that class) and returns the refined coloring. Beyond the window
/// the preconditions are trusted.
pub fn refine_coloring(
    g: &CountableGraph,
    c: VertexColoring,
    n: usize,
    i0: usize,
    subset: VertexSubset,
    probe: usize,
) -> Result<RefinedColoring> {
    if i0 >= n {
        return Err(Error::Domain(format!("color {i0} is not one of {n} colors")));
    }
    if let Some(v) = (0..probe as u64).find(|&v| c(v) >= n) {
        return Err(Error::Domain(format!("vertex {v} has color {} outside [{n}]", c(v))));
    }
    if !is_proper_on_prefix(g, &*c, probe) {
        return Err(Error::Precondition(format!("coloring is not proper on the first {probe} vertices")));
    }
    if !(probe as u64 / 2..probe as u64).any(|v| c(v) == i0) {
        return Err(Error::Precondition(format!(
            "color {i0} does not occur among vertices {}..{probe}; its class looks finite",
            probe / 2
        )));
    }
    if let Some(v) = (0..probe as u64).find(|&v| subset(v) && c(v) != i0) {
        return Err(Error::Domain(format!("subset contains {v}, which has color {} rather than {i0}", c(v))));
    }
    Ok(RefinedColoring {
        base: c,
        subset,
        i0,
        n,
        probe_bound: probe,
    })
}

/// A surjection from a path onto a connected finite graph, found by a
/// depth-first walk that backtracks only while unvisited vertices remain.
/// The path has at most `2|V| - 1` vertices.
pub fn covering_walk_finite(g: &FiniteGraph) -> Result<GraphHom> {
    if !g.is_connected() {
        return Err(Error::Domain("a covering walk needs a connected graph".into()));
    }
    let n = g.vertex_count();
    let mut walk = Vec::new();
    if n > 0 {
        let mut seen = vec![false; n];
        let mut remaining = n;
        fn dfs(g: &FiniteGraph, v: usize, seen: &mut [bool], remaining: &mut usize, walk: &mut Vec<usize>) {
            seen[v] = true;
            *remaining -= 1;
            walk.push(v);
            for &w in g.neighbors(v) {
                if *remaining == 0 {
                    return;
                }
                if !seen[w] {
                    dfs(g, w, seen, remaining, walk);
                    if *remaining > 0 {
                        walk.push(v);
                    }
                }
            }
        }
        dfs(g, 0, &mut seen, &mut remaining, &mut walk);
    }
    Ok(GraphHom::new(FiniteGraph::path(walk.len()), g.clone(), walk))
}

/// A prefix of a walk `T_ℕ -> g` and how many enumerated vertices it covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringWalk {
    pub walk: Vec<u64>,
    /// Vertices `0..covered` all occur in `walk`.
    pub covered: u64,
}

/// The first `length` steps of a walk visiting every vertex of `g`.
///
/// The wheel alternates spokes and center (`1, 0, 2, 0, ...`); other graphs
/// chain shortest paths to the vertices `1, 2, 3, ...` in enumeration order.
pub fn covering_walk_countable(g: &CountableGraph, length: usize, node_cap: usize) -> Result<CoveringWalk> {
    let mut walk: Vec<u64> = Vec::with_capacity(length);
    match g {
        CountableGraph::NaturalWheel => {
            walk.extend((0..length as u64).map(|i| if i % 2 == 0 { i / 2 + 1 } else { 0 }));
        }
        _ => {
            if length > 0 {
                walk.push(0);
            }
            let mut seen = std::collections::HashSet::from([0u64]);
            let mut target = 1u64;
            while walk.len() < length {
                if seen.contains(&target) {
                    target += 1;
                    continue;
                }
                let here = *walk.last().expect("walk is nonempty");
                let path = g.shortest_path(here, target, node_cap)?;
                for &v in &path[1..] {
                    seen.insert(v);
                    walk.push(v);
                }
                target += 1;
            }
            walk.truncate(length);
        }
    }
    let covered = covered_prefix(&walk);
    Ok(CoveringWalk { walk, covered })
}

fn covered_prefix(walk: &[u64]) -> u64 {
    let mut hit = vec![false; walk.len() + 1];
    for &v in walk {
        if (v as usize) < hit.len() {
            hit[v as usize] = true;
        }
    }
    hit.iter().position(|&b| !b).unwrap_or(hit.len()) as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteDistanceMap {
    pub distances: Vec<usize>,
    /// Never true: a finite graph has bounded distances.
    pub surjective: bool,
    pub eccentricity: usize,
}

/// `v ↦ d(p, v)` as a homomorphism into the natural tree.
pub fn distance_hom_finite(g: &FiniteGraph, p: usize) -> Result<FiniteDistanceMap> {
    if p >= g.vertex_count() {
        return Err(Error::Structural(format!("vertex {p} out of range")));
    }
    if !g.is_connected() {
        return Err(Error::Domain("distance maps need a connected graph".into()));
    }
    if g.two_coloring().is_none() {
        return Err(Error::Precondition("the graph has an odd cycle".into()));
    }
    let distances: Vec<usize> = g.bfs_distances(p).into_iter().map(|d| d.expect("connected")).collect();
    let eccentricity = distances.iter().copied().max().unwrap_or(0);
    Ok(FiniteDistanceMap {
        distances,
        surjective: false,
        eccentricity,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountableDistanceMap {
    /// `d(p, v)` for the probed vertices `0..distances.len()`.
    pub distances: Vec<usize>,
    pub surjective: bool,
    /// The diameter when the graph is bounded.
    pub bound: Option<usize>,
}

/// `v ↦ d(p, v)` into the natural tree, evaluated on the first `probe`
/// vertices.
///
/// Strips are bipartite exactly when they have a 2-coloring, which the
/// transfer digraph decides. A connected strip has bounded degree and
/// infinitely many vertices, so it is unbounded and the map is onto.
/// Connectivity is only confirmed for the probed vertices.
pub fn distance_hom_countable(g: &CountableGraph, p: u64, probe: usize, node_cap: usize) -> Result<CountableDistanceMap> {
    let (bipartite, bound) = match g {
        CountableGraph::NaturalTree => (true, None),
        CountableGraph::NaturalWheel => (true, Some(2)),
        CountableGraph::CompleteMinusEdge => (false, Some(2)),
        CountableGraph::Strip(s) => (
            !build_transfer_digraph(s, 2)?.analyze().cardinality.is_zero(),
            None,
        ),
    };
    if !bipartite {
        return Err(Error::Precondition(format!("{g} has an odd cycle")));
    }
    let targets: Vec<u64> = (0..probe as u64).collect();
    let found = g.distances(p, &targets, node_cap)?;
    Ok(CountableDistanceMap {
        distances: targets.iter().map(|t| found[t]).collect(),
        surjective: bound.is_none(),
        bound,
    })
}
