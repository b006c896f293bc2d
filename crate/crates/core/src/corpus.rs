//! Small corpora: every graph on a few vertices up to isomorphism, and
//! every tree.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;

/// Largest vertex count for which [`canonical_form`] tries every
/// permutation.
pub const CANONICAL_LIMIT: usize = 8;
/// Largest vertex count for [`all_graphs`].
pub const ALL_GRAPHS_LIMIT: usize = 6;

fn pair_bit(u: usize, v: usize) -> u32 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    // Bits in graph6 order: (0,1), (0,2), (1,2), (0,3), ...
    (b * (b - 1) / 2 + a) as u32
}

fn mask_of(g: &FiniteGraph, perm: &[usize]) -> u64 {
    g.edges()
        .into_iter()
        .fold(0, |m, (u, v)| m | 1 << pair_bit(perm[u], perm[v]))
}

fn graph_of_mask(n: usize, mask: u64) -> FiniteGraph {
    let edges = (1..n).flat_map(|b| (0..b).map(move |a| (a, b))).filter(|&(a, b)| mask >> pair_bit(a, b) & 1 == 1);
    FiniteGraph::new(n, edges).expect("mask edges are in range")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn heap(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(perm.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            perm.swap(j, k - 1);
        }
    }
    heap(n, &mut perm, &mut out);
    out
}

fn canonical_mask(g: &FiniteGraph, perms: &[Vec<usize>]) -> u64 {
    perms.iter().map(|p| mask_of(g, p)).min().unwrap_or(0)
}

/// The relabelling of `g` with the smallest edge bitmask.
pub fn canonical_form(g: &FiniteGraph) -> Result<FiniteGraph> {
    let n = g.vertex_count();
    if n > CANONICAL_LIMIT {
        return Err(Error::Resource(format!(
            "canonical forms are computed by brute force up to {CANONICAL_LIMIT} vertices, got {n}"
        )));
    }
    Ok(graph_of_mask(n, canonical_mask(g, &permutations(n))))
}

pub fn are_isomorphic(g: &FiniteGraph, h: &FiniteGraph) -> Result<bool> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

/// One graph per isomorphism class on `n` vertices, ordered by canonical
/// edge bitmask.
pub fn all_graphs(n: usize) -> Result<Vec<FiniteGraph>> {
    if n > ALL_GRAPHS_LIMIT {
        return Err(Error::Resource(format!("all graphs are enumerated up to {ALL_GRAPHS_LIMIT} vertices, got {n}")));
    }
    let perms = permutations(n);
    let pairs = n * n.saturating_sub(1) / 2;
    let mut classes = BTreeSet::new();
    let mut done = vec![false; 1 << pairs];
    for mask in 0..1u64 << pairs {
        if done[mask as usize] {
            continue;
        }
        let g = graph_of_mask(n, mask);
        let images: Vec<u64> = perms.iter().map(|p| mask_of(&g, p)).collect();
        for &m in &images {
            done[m as usize] = true;
        }
        classes.insert(*images.iter().min().expect("at least one permutation"));
    }
    Ok(classes.into_iter().map(|m| graph_of_mask(n, m)).collect())
}

pub fn connected_graphs(n: usize) -> Result<Vec<FiniteGraph>> {
    Ok(all_graphs(n)?.into_iter().filter(FiniteGraph::is_connected).collect())
}

/// Canonical string of a tree: the smaller of the rooted encodings at its
/// center(s).
pub fn tree_code(t: &FiniteGraph) -> Result<String> {
    let n = t.vertex_count();
    if n == 0 {
        return Ok(String::new());
    }
    if !t.is_connected() || t.edge_count() + 1 != n {
        return Err(Error::Domain("not a tree".into()));
    }
    // Peel leaves until one or two vertices remain.
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in t.neighbors(v) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    fn rooted(t: &FiniteGraph, v: usize, parent: usize) -> String {
        let mut children: Vec<String> = t
            .neighbors(v)
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| rooted(t, w, v))
            .collect();
        children.sort();
        format!("({})", children.concat())
    }
    Ok(layer.iter().map(|&c| rooted(t, c, usize::MAX)).min().expect("a center exists"))
}

/// One tree per isomorphism class on `n` vertices, ordered by canonical
/// code. Built by attaching a leaf to every vertex of every smaller tree.
pub fn trees(n: usize) -> Vec<FiniteGraph> {
    let mut current: BTreeMap<String, FiniteGraph> = BTreeMap::new();
    if n == 0 {
        return vec![FiniteGraph::edgeless(0)];
    }
    current.insert("()".into(), FiniteGraph::edgeless(1));
    for size in 1..n {
        let mut next = BTreeMap::new();
        for t in current.values() {
            for v in 0..size {
                let mut edges = t.edges();
                edges.push((v, size));
                let grown = FiniteGraph::new(size + 1, edges).expect("leaf edge is valid");
                let code = tree_code(&grown).expect("adding a leaf keeps a tree");
                next.entry(code).or_insert(grown);
            }
        }
        current = next;
    }
    current.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;

    #[test]
    fn class_counts() {
        let all: Vec<usize> = (0..=6).map(|n| all_graphs(n).unwrap().len()).collect();
        assert_eq!(all, vec![1, 1, 2, 4, 11, 34, 156]);
        let connected: Vec<usize> = (1..=6).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112]);
        assert!(all_graphs(7).is_err());
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=9).map(|n| trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47]);
        for t in trees(7) {
            assert!(t.is_connected() && t.edge_count() == 6);
        }
    }

    #[test]
    fn isomorphism() {
        let p = FiniteGraph::path(4);
        let q = p.relabel(&[2, 0, 3, 1]).unwrap();
        assert!(are_isomorphic(&p, &q).unwrap());
        assert!(!are_isomorphic(&p, &FiniteGraph::star(3)).unwrap());
        assert_eq!(canonical_form(&q).unwrap(), canonical_form(&p).unwrap());
        assert!(canonical_form(&complete_graph(9)).is_err());
    }

    #[test]
    fn tree_codes() {
        let star = FiniteGraph::star(3);
        let relabelled = star.relabel(&[3, 0, 1, 2]).unwrap();
        assert_eq!(tree_code(&star).unwrap(), tree_code(&relabelled).unwrap());
        assert_ne!(tree_code(&star).unwrap(), tree_code(&FiniteGraph::path(4)).unwrap());
        assert!(tree_code(&FiniteGraph::cycle(4).unwrap()).is_err());
    }
}
