//! Stable partitions and the coloring ↔ (partition, injection) correspondence.
//!
//! A partition of `0..n` is stored as its restricted growth string: vertex
//! `v` carries the index of its block, blocks are numbered in order of their
//! smallest vertex. This gives every partition one canonical encoding, and
//! lexicographic order on the strings is the enumeration order.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::chromatic::StVector;
use crate::error::{Error, Result};
use crate::graph::{complete_graph, is_surjective_hom, validate_hom, FiniteGraph, GraphHom, Injection, Vertex};

pub const DEFAULT_PARTITION_LIMIT: usize = 10;

/// A coloring is a color index per vertex.
pub type Coloring = Vec<usize>;

/// A set partition of `0..n` as a restricted growth string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    labels: Vec<usize>,
    block_count: usize,
}

impl Partition {
    /// Normalizes an arbitrary block assignment to restricted growth form.
    pub fn from_assignment(assignment: &[usize]) -> Self {
        let mut rename: BTreeMap<usize, usize> = BTreeMap::new();
        let labels = assignment
            .iter()
            .map(|a| {
                let next = rename.len();
                *rename.entry(*a).or_insert(next)
            })
            .collect();
        Partition {
            labels,
            block_count: rename.len(),
        }
    }

    /// Accepts a string only if it already is a restricted growth string.
    pub fn from_rgs(labels: Vec<usize>) -> Result<Self> {
        let mut max_plus_one = 0;
        for (i, &l) in labels.iter().enumerate() {
            if l > max_plus_one {
                return Err(Error::Domain(format!(
                    "not a restricted growth string: position {i} jumps to block {l}"
                )));
            }
            if l == max_plus_one {
                max_plus_one += 1;
            }
        }
        Ok(Partition {
            labels,
            block_count: max_plus_one,
        })
    }

    pub fn from_blocks(vertex_count: usize, blocks: &[Vec<Vertex>]) -> Result<Self> {
        let mut assignment = vec![usize::MAX; vertex_count];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Domain("empty block".into()));
            }
            for &v in block {
                if v >= vertex_count {
                    return Err(Error::Structural(format!("vertex {v} out of range")));
                }
                if assignment[v] != usize::MAX {
                    return Err(Error::Domain(format!("vertex {v} lies in two blocks")));
                }
                assignment[v] = b;
            }
        }
        if let Some(v) = assignment.iter().position(|&a| a == usize::MAX) {
            return Err(Error::Domain(format!("vertex {v} lies in no block")));
        }
        Ok(Self::from_assignment(&assignment))
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_of(&self, v: Vertex) -> usize {
        self.labels[v]
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Blocks as sorted vertex lists, in block-index order (which is also
    /// sorted order, by smallest element).
    pub fn blocks(&self) -> Vec<Vec<Vertex>> {
        let mut blocks = vec![Vec::new(); self.block_count];
        for (v, &b) in self.labels.iter().enumerate() {
            blocks[b].push(v);
        }
        blocks
    }

    pub fn is_stable_in(&self, g: &FiniteGraph) -> bool {
        self.labels.len() == g.vertex_count()
            && g.edges().into_iter().all(|(u, v)| self.labels[u] != self.labels[v])
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks().serialize(s)
    }
}

/// A partition whose blocks are independent sets of a particular graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct StablePartition(Partition);

impl StablePartition {
    pub fn new(g: &FiniteGraph, p: Partition) -> Result<Self> {
        if p.vertex_count() != g.vertex_count() {
            return Err(Error::Structural(format!(
                "partition of {} vertices for a graph on {}",
                p.vertex_count(),
                g.vertex_count()
            )));
        }
        if let Some((u, v)) = g.edges().into_iter().find(|&(u, v)| p.block_of(u) == p.block_of(v)) {
            return Err(Error::Domain(format!(
                "not stable: adjacent vertices {u} and {v} share a block"
            )));
        }
        Ok(StablePartition(p))
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn block_count(&self) -> usize {
        self.0.block_count
    }

    pub fn labels(&self) -> &[usize] {
        &self.0.labels
    }

    pub fn blocks(&self) -> Vec<Vec<Vertex>> {
        self.0.blocks()
    }
}

fn check_partition_limit(g: &FiniteGraph, limit: usize) -> Result<()> {
    if g.vertex_count() > limit {
        return Err(Error::Resource(format!(
            "{} vertices exceed the stable partition limit of {limit}",
            g.vertex_count()
        )));
    }
    Ok(())
}

/// Every stable partition of `g`, once each, in restricted-growth-string
/// order. Backtracks vertex by vertex and rejects a block as soon as it
/// would contain an edge.
pub fn enumerate_stable_partitions(g: &FiniteGraph, limit: usize) -> Result<Vec<StablePartition>> {
    check_partition_limit(g, limit)?;
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    visit_stable(g, 0, 0, &mut labels, &mut |labels, blocks| {
        out.push(StablePartition(Partition {
            labels: labels.to_vec(),
            block_count: blocks,
        }));
    });
    Ok(out)
}

fn visit_stable(
    g: &FiniteGraph,
    v: usize,
    blocks: usize,
    labels: &mut [usize],
    emit: &mut impl FnMut(&[usize], usize),
) {
    if v == labels.len() {
        emit(labels, blocks);
        return;
    }
    for b in 0..=blocks {
        let clash = g.neighbors(v).iter().any(|&w| w < v && labels[w] == b);
        if clash {
            continue;
        }
        labels[v] = b;
        visit_stable(g, v + 1, blocks.max(b + 1), labels, emit);
    }
}

/// `k -> #St_k(g)`, counted without materializing the partitions.
pub fn st_counts(g: &FiniteGraph, limit: usize) -> Result<StVector> {
    check_partition_limit(g, limit)?;
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    let mut labels = vec![0usize; g.vertex_count()];
    visit_stable(g, 0, 0, &mut labels, &mut |_, blocks| {
        *counts.entry(blocks).or_default() += 1;
    });
    Ok(StVector::new(
        counts.into_iter().map(|(k, c)| (k, BigUint::from(c))).collect(),
    ))
}

pub fn is_proper(g: &FiniteGraph, c: &[usize]) -> bool {
    c.len() == g.vertex_count() && g.edges().into_iter().all(|(u, v)| c[u] != c[v])
}

pub(crate) fn check_proper(g: &FiniteGraph, c: &[usize]) -> Result<()> {
    if c.len() != g.vertex_count() {
        return Err(Error::Structural(format!(
            "coloring has {} entries for {} vertices",
            c.len(),
            g.vertex_count()
        )));
    }
    if let Some((u, v)) = g.edges().into_iter().find(|&(u, v)| c[u] == c[v]) {
        return Err(Error::Domain(format!(
            "improper coloring: adjacent vertices {u} and {v} both have color {}",
            c[u]
        )));
    }
    Ok(())
}

/// The fibers of a proper coloring.
pub fn partition_of_coloring(g: &FiniteGraph, c: &[usize]) -> Result<StablePartition> {
    check_proper(g, c)?;
    Ok(StablePartition(Partition::from_assignment(c)))
}

/// The homomorphism onto `K_k` sending each vertex to the index of its block.
pub fn canonical_surjection(g: &FiniteGraph, p: &StablePartition) -> Result<GraphHom> {
    let p = StablePartition::new(g, p.partition().clone())?;
    Ok(GraphHom::new(
        g.clone(),
        complete_graph(p.block_count()),
        p.labels().to_vec(),
    ))
}

/// Splits a proper `[color_count]`-coloring into its stable partition and
/// the injection sending block `b` to the color of its vertices.
pub fn decompose_coloring(
    g: &FiniteGraph,
    c: &[usize],
    color_count: usize,
) -> Result<(StablePartition, Injection)> {
    let p = partition_of_coloring(g, c)?;
    let mut block_colors = vec![0usize; p.block_count()];
    for (v, &b) in p.labels().iter().enumerate() {
        block_colors[b] = c[v];
    }
    let inj = Injection::new(color_count, block_colors)?;
    Ok((p, inj))
}

/// Inverse of [`decompose_coloring`].
pub fn recompose_coloring(g: &FiniteGraph, p: &StablePartition, inj: &Injection) -> Result<Coloring> {
    if p.labels().len() != g.vertex_count() {
        return Err(Error::Structural("partition does not match the graph".into()));
    }
    if inj.source_size() != p.block_count() {
        return Err(Error::Domain(format!(
            "injection has {} sources for {} blocks",
            inj.source_size(),
            p.block_count()
        )));
    }
    Ok(p.labels().iter().map(|&b| inj.apply(b)).collect())
}

/// Like [`recompose_coloring`] with a raw block-to-color map, which is
/// rejected unless injective.
pub fn recompose_from_map(
    g: &FiniteGraph,
    p: &StablePartition,
    block_colors: Vec<usize>,
    color_count: usize,
) -> Result<Coloring> {
    let inj = Injection::new(color_count, block_colors)?;
    recompose_coloring(g, p, &inj)
}

/// Pulls a stable partition of `phi.target` back along a surjective
/// homomorphism: the blocks of the result are the preimages of the blocks.
pub fn pullback_partition(phi: &GraphHom, p: &StablePartition) -> Result<StablePartition> {
    if !validate_hom(phi)? {
        return Err(Error::Domain("pullback along a map that is not a homomorphism".into()));
    }
    if !is_surjective_hom(phi) {
        return Err(Error::Domain(
            "pullback along a non-surjective homomorphism would create empty blocks".into(),
        ));
    }
    let p = StablePartition::new(&phi.target, p.partition().clone())?;
    let assignment: Vec<usize> = phi.map.iter().map(|&w| p.labels()[w]).collect();
    let pulled = Partition::from_assignment(&assignment);
    debug_assert_eq!(pulled.block_count(), p.block_count());
    Ok(StablePartition(pulled))
}
