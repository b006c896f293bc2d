//! Finite simple graphs, graph homomorphisms and injections of color sets.
//!
//! Vertices are dense indices `0..n`. Anything name-like lives outside of
//! [`FiniteGraph`] in whatever side table the caller keeps.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph6;

pub type Vertex = usize;

/// A simple undirected graph on the vertices `0..vertex_count`.
///
/// Adjacency lists are kept sorted and deduplicated, so two graphs compare
/// equal exactly when they have the same labelled edge set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGraph {
    adj: Vec<Vec<Vertex>>,
}

impl FiniteGraph {
    /// Builds a graph from an edge list. Repeated edges (in either
    /// orientation) collapse to one; self-loops and out-of-range endpoints
    /// are rejected.
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); vertex_count];
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Structural(format!(
                    "edge ({u}, {v}) out of range for {vertex_count} vertices"
                )));
            }
            if u == v {
                return Err(Error::Domain(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(FiniteGraph { adj })
    }

    pub fn edgeless(vertex_count: usize) -> Self {
        FiniteGraph {
            adj: vec![Vec::new(); vertex_count],
        }
    }

    /// Path on `n` vertices, `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// The star `K_{1,leaves}` with center `0`.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges are valid")
    }

    /// `K_n` with the edge `{0, 1}` removed.
    pub fn complete_minus_edge(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("K_{n} has no edge to delete")));
        }
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&e| e != (0, 1));
        Self::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(Vec::is_empty)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.adj.len();
        self.adj.iter().all(|list| list.len() + 1 == n)
    }

    /// The graph with the edge `{u, v}` removed (a no-op if it is absent).
    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Self {
        let mut adj = self.adj.clone();
        adj[u].retain(|&w| w != v);
        adj[v].retain(|&w| w != u);
        FiniteGraph { adj }
    }

    /// Identifies `v` with `u`, drops the resulting loop and parallel edges,
    /// and relabels so vertices stay dense: every index above `v` shifts
    /// down by one.
    pub fn contract(&self, u: Vertex, v: Vertex) -> Self {
        assert!(u != v, "cannot contract a vertex with itself");
        let relabel = |w: Vertex| -> Vertex {
            let w = if w == v { u } else { w };
            if w > v {
                w - 1
            } else {
                w
            }
        };
        let edges = self
            .edges()
            .into_iter()
            .map(|(a, b)| (relabel(a), relabel(b)))
            .filter(|(a, b)| a != b);
        Self::new(self.vertex_count() - 1, edges).expect("contraction keeps edges in range")
    }

    /// The graph obtained by renaming vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self> {
        if perm.len() != self.vertex_count() {
            return Err(Error::Structural(format!(
                "relabelling has {} entries for {} vertices",
                perm.len(),
                self.vertex_count()
            )));
        }
        Self::new(
            self.vertex_count(),
            self.edges().into_iter().map(|(a, b)| (perm[a], perm[b])),
        )
    }

    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Self {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges()
            .into_iter()
            .filter(|&(a, b)| index[a] != usize::MAX && index[b] != usize::MAX)
            .map(|(a, b)| (index[a], index[b]));
        Self::new(keep.len(), edges).expect("induced edges are in range")
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// A proper 2-coloring if one exists. Each component's smallest vertex
    /// gets color 0.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let n = self.vertex_count();
        let mut side: Vec<Option<u8>> = vec![None; n];
        for start in 0..n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(0);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(1 - su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn to_graph6(&self) -> String {
        graph6::emit_graph6(self)
    }
}

impl fmt::Debug for FiniteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGraph({} vertices, edges {:?})", self.vertex_count(), self.edges())
    }
}

impl fmt::Display for FiniteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

/// The complete graph `K_n`.
pub fn complete_graph(n: usize) -> FiniteGraph {
    FiniteGraph {
        adj: (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect(),
    }
}

/// Shortest-path distance, with disconnection as its own variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

pub fn adjacency_distance(g: &FiniteGraph, p: Vertex, v: Vertex) -> Result<Distance> {
    let n = g.vertex_count();
    if p >= n || v >= n {
        return Err(Error::Structural(format!(
            "vertex out of range: ({p}, {v}) with {n} vertices"
        )));
    }
    Ok(match g.bfs_distances(p)[v] {
        Some(d) => Distance::Finite(d),
        None => Distance::Infinite,
    })
}

pub fn has_odd_cycle(g: &FiniteGraph) -> bool {
    g.two_coloring().is_none()
}

/// A vertex map between two finite graphs. The map is not checked on
/// construction; see [`validate_hom`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphHom {
    pub source: FiniteGraph,
    pub target: FiniteGraph,
    pub map: Vec<Vertex>,
}

impl GraphHom {
    pub fn new(source: FiniteGraph, target: FiniteGraph, map: Vec<Vertex>) -> Self {
        GraphHom { source, target, map }
    }

    pub fn identity(g: &FiniteGraph) -> Self {
        GraphHom::new(g.clone(), g.clone(), (0..g.vertex_count()).collect())
    }

    /// Like [`GraphHom::new`] but fails unless the map is a valid homomorphism.
    pub fn checked(source: FiniteGraph, target: FiniteGraph, map: Vec<Vertex>) -> Result<Self> {
        let h = GraphHom::new(source, target, map);
        if validate_hom(&h)? {
            Ok(h)
        } else {
            Err(Error::Domain("vertex map does not preserve edges".into()))
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GraphHom) -> Result<GraphHom> {
        if self.target != next.source {
            return Err(Error::Structural("composed homomorphisms do not match".into()));
        }
        let map = self.map.iter().map(|&v| next.map[v]).collect();
        Ok(GraphHom::new(self.source.clone(), next.target.clone(), map))
    }
}

/// `Ok(true)` iff every source edge lands on a target edge. Wrong map
/// length or an out-of-range image is a structural error, not `false`.
pub fn validate_hom(h: &GraphHom) -> Result<bool> {
    if h.map.len() != h.source.vertex_count() {
        return Err(Error::Structural(format!(
            "map has {} entries for {} source vertices",
            h.map.len(),
            h.source.vertex_count()
        )));
    }
    let m = h.target.vertex_count();
    if let Some((v, &w)) = h.map.iter().enumerate().find(|(_, &w)| w >= m) {
        return Err(Error::Structural(format!(
            "vertex {v} maps to {w}, target has {m} vertices"
        )));
    }
    Ok(h
        .source
        .edges()
        .into_iter()
        .all(|(a, b)| h.target.has_edge(h.map[a], h.map[b])))
}

pub fn is_surjective_hom(h: &GraphHom) -> bool {
    let mut hit = vec![false; h.target.vertex_count()];
    for &w in &h.map {
        if let Some(slot) = hit.get_mut(w) {
            *slot = true;
        }
    }
    hit.into_iter().all(|b| b)
}

/// An injective map `[source_size] -> [target_size]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Injection {
    target_size: usize,
    map: Vec<usize>,
}

impl Injection {
    pub fn new(target_size: usize, map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; target_size];
        for (i, &x) in map.iter().enumerate() {
            if x >= target_size {
                return Err(Error::Domain(format!(
                    "{i} maps to {x}, outside of [{target_size}]"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::Domain(format!("map is not injective: {x} is hit twice")));
            }
        }
        Ok(Injection { target_size, map })
    }

    pub fn identity(n: usize) -> Self {
        Injection {
            target_size: n,
            map: (0..n).collect(),
        }
    }

    /// The order-preserving inclusion `[k] -> [m]`.
    pub fn inclusion(k: usize, m: usize) -> Result<Self> {
        Injection::new(m, (0..k).collect())
    }

    pub fn source_size(&self) -> usize {
        self.map.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Injection) -> Result<Injection> {
        if self.target_size != next.source_size() {
            return Err(Error::Structural(format!(
                "cannot compose [{}] -> [{}] with [{}] -> [{}]",
                self.source_size(),
                self.target_size,
                next.source_size(),
                next.target_size
            )));
        }
        Ok(Injection {
            target_size: next.target_size,
            map: self.map.iter().map(|&i| next.map[i]).collect(),
        })
    }

    /// Every injection `[k] -> [m]`, in lexicographic order of the image
    /// sequence.
    pub fn all(k: usize, m: usize) -> Vec<Injection> {
        fn go(k: usize, m: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Injection>) {
            if cur.len() == k {
                out.push(Injection {
                    target_size: m,
                    map: cur.clone(),
                });
                return;
            }
            for x in 0..m {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    go(k, m, cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        if k <= m {
            go(k, m, &mut Vec::with_capacity(k), &mut vec![false; m], &mut out);
        }
        out
    }
}
