//! Brute-force oracles. None of these share code with the algorithms they
//! check.
#![allow(dead_code)]

use chromafun::FiniteGraph;
use proptest::prelude::*;

/// Proper `n`-colorings of a graph given by its edge list, by backtracking
/// in vertex order.
pub fn count_colorings(vertex_count: usize, edges: &[(usize, usize)], n: usize) -> u64 {
    let mut earlier = vec![Vec::new(); vertex_count];
    for &(u, v) in edges {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        earlier[b].push(a);
    }
    fn go(v: usize, n: usize, earlier: &[Vec<usize>], colors: &mut Vec<usize>) -> u64 {
        if v == earlier.len() {
            return 1;
        }
        let mut total = 0;
        for c in 0..n {
            if earlier[v].iter().all(|&u| colors[u] != c) {
                colors.push(c);
                total += go(v + 1, n, earlier, colors);
                colors.pop();
            }
        }
        total
    }
    go(0, n, &earlier, &mut Vec::with_capacity(vertex_count))
}

pub fn count_graph_colorings(g: &FiniteGraph, n: usize) -> u64 {
    count_colorings(g.vertex_count(), &g.edges(), n)
}

/// Every set partition of `0..n` as a block label per element.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(i: usize, n: usize, labels: &mut Vec<usize>, blocks: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(labels.clone());
            return;
        }
        for b in 0..=blocks {
            labels.push(b);
            go(i + 1, n, labels, blocks.max(b + 1), out);
            labels.pop();
        }
    }
    go(0, n, &mut Vec::new(), 0, &mut out);
    out
}

/// `#St_k` by filtering all set partitions.
pub fn stable_partition_counts(g: &FiniteGraph) -> Vec<u64> {
    let n = g.vertex_count();
    let mut counts = vec![0u64; n + 1];
    for labels in set_partitions(n) {
        if g.edges().iter().all(|&(u, v)| labels[u] != labels[v]) {
            let k = labels.iter().copied().max().map_or(0, |m| m + 1);
            counts[k] += 1;
        }
    }
    counts
}

/// Stirling numbers of the second kind by their recurrence.
pub fn stirling2(n: usize, k: usize) -> u64 {
    let mut s = vec![vec![0u64; n + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for j in 1..=i {
            s[i][j] = j as u64 * s[i - 1][j] + s[i - 1][j - 1];
        }
    }
    if k <= n {
        s[n][k]
    } else {
        0
    }
}

pub fn arb_graph(max_vertices: usize) -> impl Strategy<Value = FiniteGraph> {
    (0..=max_vertices).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = all.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            FiniteGraph::new(n, edges).unwrap()
        })
    })
}
