//! The coloring functor `X ↦ χ(G, X)` on finite color sets `[n]`.
//!
//! Colorings are covariant along color injections ([`pushforward`]) and
//! contravariant along graph homomorphisms ([`pullback`]). A family of
//! bijections `r_n : χ(G1, [n]) -> χ(G2, [n])` is natural when it commutes
//! with every pushforward; [`NaturalBijection`] builds one from a matching
//! of stable partitions, and the verifiers here check naturality by
//! exhaustive enumeration.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{complete_graph, validate_hom, FiniteGraph, GraphHom, Injection};
use crate::partitions::{
    check_proper, decompose_coloring, enumerate_stable_partitions, recompose_coloring, st_counts, Coloring,
    Partition, StablePartition,
};

pub const DEFAULT_COLORING_BUDGET: usize = 10_000_000;

/// All proper `[color_count]`-colorings of a graph, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringSet {
    pub graph: FiniteGraph,
    pub color_count: usize,
    pub colorings: Vec<Coloring>,
}

impl ColoringSet {
    pub fn len(&self) -> usize {
        self.colorings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colorings.is_empty()
    }

    /// Position of `c` in the enumeration.
    pub fn index_of(&self, c: &[usize]) -> Option<usize> {
        self.colorings.binary_search_by(|x| x.as_slice().cmp(c)).ok()
    }
}

/// Enumerates `χ(g, [n])`, refusing once more than `budget` colorings
/// would be produced.
pub fn enumerate_colorings(g: &FiniteGraph, n: usize, budget: usize) -> Result<ColoringSet> {
    fn go(
        g: &FiniteGraph,
        n: usize,
        v: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Coloring>,
        budget: usize,
    ) -> Result<()> {
        if v == g.vertex_count() {
            if out.len() == budget {
                return Err(Error::Resource(format!(
                    "more than {budget} colorings with {n} colors"
                )));
            }
            out.push(cur.clone());
            return Ok(());
        }
        for color in 0..n {
            if g.neighbors(v).iter().any(|&w| w < v && cur[w] == color) {
                continue;
            }
            cur.push(color);
            go(g, n, v + 1, cur, out, budget)?;
            cur.pop();
        }
        Ok(())
    }
    let mut colorings = Vec::new();
    go(g, n, 0, &mut Vec::with_capacity(g.vertex_count()), &mut colorings, budget)?;
    Ok(ColoringSet {
        graph: g.clone(),
        color_count: n,
        colorings,
    })
}

/// `f ∘ c`.
pub fn pushforward(f: &Injection, c: &[usize]) -> Result<Coloring> {
    c.iter()
        .map(|&x| {
            if x < f.source_size() {
                Ok(f.apply(x))
            } else {
                Err(Error::Domain(format!(
                    "color {x} outside the injection's source [{}]",
                    f.source_size()
                )))
            }
        })
        .collect()
}

/// `c ∘ phi`, where `c` colors `phi.target`.
pub fn pullback(phi: &GraphHom, c: &[usize]) -> Result<Coloring> {
    if !validate_hom(phi)? {
        return Err(Error::Domain("pullback along a map that is not a homomorphism".into()));
    }
    check_proper(&phi.target, c)?;
    Ok(phi.map.iter().map(|&w| c[w]).collect())
}

/// A proper coloring as a homomorphism into `K_n`.
pub fn coloring_to_hom(g: &FiniteGraph, c: &[usize], n: usize) -> Result<GraphHom> {
    check_proper(g, c)?;
    if let Some(&x) = c.iter().find(|&&x| x >= n) {
        return Err(Error::Domain(format!("color {x} outside [{n}]")));
    }
    Ok(GraphHom::new(g.clone(), complete_graph(n), c.to_vec()))
}

pub fn hom_to_coloring(h: &GraphHom) -> Result<Coloring> {
    if !h.target.is_complete() {
        return Err(Error::Domain("target is not a complete graph".into()));
    }
    if !validate_hom(h)? {
        return Err(Error::Domain("map is not a homomorphism".into()));
    }
    Ok(h.map.clone())
}

/// A family of maps `r_n : χ(source, [n]) -> χ(target, [n])`, one per color
/// count, evaluated on demand.
pub trait ColoringFamily: Sync {
    fn source(&self) -> &FiniteGraph;
    fn target(&self) -> &FiniteGraph;
    fn apply(&self, n: usize, c: &[usize]) -> Result<Coloring>;
}

/// The natural isomorphism obtained by matching `St_k(g1)` with `St_k(g2)`
/// for every `k`: a coloring is split into its stable partition and the
/// injection of blocks into colors, the partition is swapped for its match,
/// and the same injection recolors it.
#[derive(Clone, Debug)]
pub struct NaturalBijection {
    g1: FiniteGraph,
    g2: FiniteGraph,
    st1: Vec<StablePartition>,
    st2: Vec<StablePartition>,
    /// Per block count, pairs of indices into `st1` / `st2`.
    matching: BTreeMap<usize, Vec<(usize, usize)>>,
    lookup: HashMap<Vec<usize>, usize>,
}

fn by_block_count(st: &[StablePartition]) -> BTreeMap<usize, Vec<usize>> {
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, p) in st.iter().enumerate() {
        out.entry(p.block_count()).or_default().push(i);
    }
    out
}

/// Pairs `St_k(g1)` with `St_k(g2)` in enumeration order for every `k`.
pub fn build_natural_bijection(g1: &FiniteGraph, g2: &FiniteGraph, partition_limit: usize) -> Result<NaturalBijection> {
    let st1 = enumerate_stable_partitions(g1, partition_limit)?;
    let st2 = enumerate_stable_partitions(g2, partition_limit)?;
    let (k1, k2) = (by_block_count(&st1), by_block_count(&st2));
    let sizes = |m: &BTreeMap<usize, Vec<usize>>, k: usize| m.get(&k).map_or(0, Vec::len);
    if let Some(k) = k1
        .keys()
        .chain(k2.keys())
        .copied()
        .filter(|&k| sizes(&k1, k) != sizes(&k2, k))
        .min()
    {
        return Err(Error::Domain(format!(
            "graphs are not chromatically equivalent: #St_{k} is {} vs {}",
            sizes(&k1, k),
            sizes(&k2, k)
        )));
    }
    let matching = k1
        .iter()
        .map(|(&k, left)| (k, left.iter().copied().zip(k2[&k].iter().copied()).collect()))
        .collect();
    NaturalBijection::with_matching(g1.clone(), g2.clone(), st1, st2, matching)
}

impl NaturalBijection {
    /// Builds the family from an explicit matching. Every partition of `g1`
    /// must be matched exactly once, to a partition of `g2` with the same
    /// number of blocks, and vice versa.
    pub fn with_matching(
        g1: FiniteGraph,
        g2: FiniteGraph,
        st1: Vec<StablePartition>,
        st2: Vec<StablePartition>,
        matching: BTreeMap<usize, Vec<(usize, usize)>>,
    ) -> Result<Self> {
        let mut seen1 = vec![false; st1.len()];
        let mut seen2 = vec![false; st2.len()];
        for (&k, pairs) in &matching {
            for &(i, j) in pairs {
                let (p, q) = match (st1.get(i), st2.get(j)) {
                    (Some(p), Some(q)) => (p, q),
                    _ => return Err(Error::Structural(format!("matching pair ({i}, {j}) out of range"))),
                };
                if p.block_count() != k || q.block_count() != k {
                    return Err(Error::Domain(format!("pair ({i}, {j}) is not in St_{k} on both sides")));
                }
                if std::mem::replace(&mut seen1[i], true) || std::mem::replace(&mut seen2[j], true) {
                    return Err(Error::Domain(format!("pair ({i}, {j}) reuses a partition")));
                }
            }
        }
        if seen1.iter().chain(&seen2).any(|s| !s) {
            return Err(Error::Domain("matching does not cover every stable partition".into()));
        }
        let lookup = st1.iter().enumerate().map(|(i, p)| (p.labels().to_vec(), i)).collect();
        Ok(NaturalBijection {
            g1,
            g2,
            st1,
            st2,
            matching,
            lookup,
        })
    }

    pub fn matching(&self) -> &BTreeMap<usize, Vec<(usize, usize)>> {
        &self.matching
    }

    pub fn partitions(&self) -> (&[StablePartition], &[StablePartition]) {
        (&self.st1, &self.st2)
    }

    fn partner(&self, i: usize) -> usize {
        let k = self.st1[i].block_count();
        self.matching[&k]
            .iter()
            .find(|&&(a, _)| a == i)
            .map(|&(_, b)| b)
            .expect("matching covers every partition")
    }
}

impl ColoringFamily for NaturalBijection {
    fn source(&self) -> &FiniteGraph {
        &self.g1
    }

    fn target(&self) -> &FiniteGraph {
        &self.g2
    }

    fn apply(&self, n: usize, c: &[usize]) -> Result<Coloring> {
        let (p, inj) = decompose_coloring(&self.g1, c, n)?;
        let i = self.lookup[p.labels()];
        recompose_coloring(&self.g2, &self.st2[self.partner(i)], &inj)
    }
}

/// Checks `r_m ∘ f_* = f_* ∘ r_k` on every element of `χ(source, [k])`,
/// where `f : [k] -> [m]`.
pub fn verify_naturality<F: ColoringFamily + ?Sized>(r: &F, f: &Injection, budget: usize) -> Result<bool> {
    let (k, m) = (f.source_size(), f.target_size());
    let domain = enumerate_colorings(r.source(), k, budget)?;
    domain.colorings.par_iter().try_fold(
        || true,
        |ok, c| -> Result<bool> {
            if !ok {
                return Ok(false);
            }
            let lhs = r.apply(m, &pushforward(f, c)?)?;
            let rhs = pushforward(f, &r.apply(k, c)?)?;
            Ok(lhs == rhs)
        },
    )
    .try_reduce(|| true, |a, b| Ok(a && b))
}

/// Checks that `r_n` maps `χ(source, [n])` bijectively onto
/// `χ(target, [n])`.
pub fn verify_bijective<F: ColoringFamily + ?Sized>(r: &F, n: usize, budget: usize) -> Result<bool> {
    let domain = enumerate_colorings(r.source(), n, budget)?;
    let codomain = enumerate_colorings(r.target(), n, budget)?;
    if domain.len() != codomain.len() {
        return Ok(false);
    }
    let mut hit = HashSet::with_capacity(domain.len());
    for c in &domain.colorings {
        let image = r.apply(n, c)?;
        if codomain.index_of(&image).is_none() || !hit.insert(image) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct NaturalityCertificate {
    pub max_colors: usize,
    /// `|χ(g1, [n])|` for `n = 0..=max_colors`.
    pub level_sizes: Vec<usize>,
    pub bijective: bool,
    pub injections_checked: usize,
    /// Total number of commuting squares checked elementwise.
    pub squares_checked: usize,
    pub natural: bool,
}

impl NaturalityCertificate {
    pub fn passed(&self) -> bool {
        self.bijective && self.natural
    }
}

/// Exhaustive certificate over every level `n <= max_colors` and every
/// injection `[k] -> [m]` with `k <= m <= max_colors`. Never samples: when a
/// coloring set exceeds the budget the whole certificate is refused.
pub fn certify_natural_isomorphism<F: ColoringFamily + ?Sized>(
    r: &F,
    max_colors: usize,
    budget: usize,
) -> Result<NaturalityCertificate> {
    let mut level_sizes = Vec::new();
    let mut bijective = true;
    for n in 0..=max_colors {
        level_sizes.push(enumerate_colorings(r.source(), n, budget)?.len());
        bijective &= verify_bijective(r, n, budget)?;
    }
    let mut natural = true;
    let mut injections_checked = 0;
    let mut squares_checked = 0;
    for m in 0..=max_colors {
        for k in 0..=m {
            for f in Injection::all(k, m) {
                natural &= verify_naturality(r, &f, budget)?;
                injections_checked += 1;
                squares_checked += level_sizes[k];
            }
        }
    }
    Ok(NaturalityCertificate {
        max_colors,
        level_sizes,
        bijective,
        injections_checked,
        squares_checked,
        natural,
    })
}

/// The family `c ↦ c ∘ beta` from `χ(K_a, ·)` to `χ(K_b, ·)`, for a
/// bijection `beta : [b] -> [a]`.
#[derive(Clone, Debug)]
pub struct InducedFamily {
    ka: FiniteGraph,
    kb: FiniteGraph,
    beta: Vec<usize>,
}

impl InducedFamily {
    pub fn new(beta: Vec<usize>) -> Result<Self> {
        let a = beta.len();
        Injection::new(a, beta.clone())?;
        Ok(InducedFamily {
            ka: complete_graph(a),
            kb: complete_graph(a),
            beta,
        })
    }
}

impl ColoringFamily for InducedFamily {
    fn source(&self) -> &FiniteGraph {
        &self.ka
    }

    fn target(&self) -> &FiniteGraph {
        &self.kb
    }

    fn apply(&self, _n: usize, c: &[usize]) -> Result<Coloring> {
        check_proper(&self.ka, c)?;
        Ok(self.beta.iter().map(|&x| c[x]).collect())
    }
}

/// Recovers the bijection behind a natural isomorphism
/// `χ(K_a, ·) -> χ(K_b, ·)`: `beta` is the image of the identity coloring
/// of `K_a`, and every component is certified to be precomposition with
/// `beta` for `n <= bound`.
pub fn yoneda_extract<F: ColoringFamily + ?Sized>(family: &F, bound: usize, budget: usize) -> Result<Vec<usize>> {
    let (ka, kb) = (family.source(), family.target());
    if !ka.is_complete() || !kb.is_complete() {
        return Err(Error::Domain("Yoneda extraction needs complete graphs on both sides".into()));
    }
    let (a, b) = (ka.vertex_count(), kb.vertex_count());
    if a != b {
        return Err(Error::Domain(format!(
            "no bijection [{b}] -> [{a}] exists, so no natural isomorphism χ(K_{a}, ·) -> χ(K_{b}, ·)"
        )));
    }
    let identity: Coloring = (0..a).collect();
    let beta = family.apply(a, &identity)?;
    if Injection::new(a, beta.clone()).is_err() {
        return Err(Error::Certification(format!("image of the identity {beta:?} is not a bijection")));
    }
    for n in 0..=bound {
        for c in enumerate_colorings(ka, n, budget)?.colorings {
            let expected: Coloring = beta.iter().map(|&x| c[x]).collect();
            let got = family.apply(n, &c)?;
            if got != expected {
                return Err(Error::Certification(format!(
                    "component at [{n}] sends {c:?} to {got:?}, expected {expected:?}"
                )));
            }
        }
    }
    Ok(beta)
}

/// Multiset of block counts, `block count -> multiplicity`.
pub fn block_size_multiset<'a, I>(family: I) -> BTreeMap<usize, usize>
where
    I: IntoIterator<Item = &'a Partition>,
{
    let mut out = BTreeMap::new();
    for p in family {
        *out.entry(p.block_count()).or_insert(0) += 1;
    }
    out
}

/// `χ(G, ·) ≅ ⊔_k χ(K_k, ·)^{⊔ #St_k(G)}` as data.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FunctorDecomposition {
    /// `k -> #St_k(G)`, as decimal strings in JSON.
    #[serde(serialize_with = "ser_biguint_map")]
    pub summands: BTreeMap<usize, BigUint>,
}

fn ser_biguint_map<S: serde::Serializer>(m: &BTreeMap<usize, BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(&k.to_string(), &v.to_string())?;
    }
    map.end()
}

impl FunctorDecomposition {
    pub fn summand_count(&self) -> BigUint {
        self.summands.values().sum()
    }
}

impl fmt::Display for FunctorDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("χ(G, ·) ≅ ")?;
        if self.summands.is_empty() {
            return f.write_str("∅");
        }
        let mut first = true;
        for (k, mult) in &self.summands {
            let mult: usize = mult.try_into().unwrap_or(usize::MAX);
            let reps = if mult <= 4 { mult } else { 1 };
            for _ in 0..reps {
                if !first {
                    f.write_str(" ⊔ ")?;
                }
                first = false;
                write!(f, "χ(K_{k}, ·)")?;
            }
            if reps != mult {
                write!(f, "^⊔{}", self.summands[k])?;
            }
        }
        Ok(())
    }
}

pub fn functor_decomposition(g: &FiniteGraph, partition_limit: usize) -> Result<FunctorDecomposition> {
    Ok(FunctorDecomposition {
        summands: st_counts(g, partition_limit)?.counts().clone(),
    })
}

/// A family given by explicit tables on the levels `0..=max_colors`.
#[derive(Clone, Debug)]
pub struct TabulatedFamily {
    sources: Arc<Vec<ColoringSet>>,
    targets: Arc<Vec<ColoringSet>>,
    tables: Vec<Vec<usize>>,
}

impl TabulatedFamily {
    /// `tables[n][i]` is the index in `targets[n]` of the image of
    /// `sources[n].colorings[i]`.
    pub fn new(sources: Vec<ColoringSet>, targets: Vec<ColoringSet>, tables: Vec<Vec<usize>>) -> Result<Self> {
        if sources.is_empty() || sources.len() != targets.len() || sources.len() != tables.len() {
            return Err(Error::Structural("one source set, target set and table per level".into()));
        }
        for (n, ((x, y), t)) in sources.iter().zip(&targets).zip(&tables).enumerate() {
            if x.color_count != n || y.color_count != n || t.len() != x.len() || t.iter().any(|&j| j >= y.len()) {
                return Err(Error::Structural(format!("table at level {n} does not match its sets")));
            }
        }
        Ok(TabulatedFamily {
            sources: Arc::new(sources),
            targets: Arc::new(targets),
            tables,
        })
    }

    pub fn max_colors(&self) -> usize {
        self.tables.len() - 1
    }

    pub fn table(&self, n: usize) -> &[usize] {
        &self.tables[n]
    }
}

impl ColoringFamily for TabulatedFamily {
    fn source(&self) -> &FiniteGraph {
        &self.sources[0].graph
    }

    fn target(&self) -> &FiniteGraph {
        &self.targets[0].graph
    }

    fn apply(&self, n: usize, c: &[usize]) -> Result<Coloring> {
        let table = self
            .tables
            .get(n)
            .ok_or_else(|| Error::Domain(format!("family is only tabulated up to [{}]", self.max_colors())))?;
        let i = self.sources[n]
            .index_of(c)
            .ok_or_else(|| Error::Domain(format!("{c:?} is not a proper [{n}]-coloring")))?;
        Ok(self.targets[n].colorings[table[i]].clone())
    }
}

/// Result of [`find_natural_families`].
#[derive(Clone, Debug)]
pub struct NaturalSearch {
    pub families: Vec<TabulatedFamily>,
    /// True when the search ran to completion (it stops early once
    /// `max_solutions` families have been found).
    pub complete: bool,
}

/// Exhaustive backtracking search for families of bijections
/// `r_n : χ(g1, [n]) -> χ(g2, [n])`, `n <= max_colors`, commuting with every
/// injection `[k] -> [m]`, `k <= m <= max_colors`.
///
/// Assigning `r_k(c) = d` forces `r_m(f∘c) = f∘d` for every such `f`; those
/// consequences are propagated eagerly and a conflict (two different forced
/// values, or a reused target) prunes the branch. The search only relies on
/// the definition of naturality, not on stable partitions.
pub fn find_natural_families(
    g1: &FiniteGraph,
    g2: &FiniteGraph,
    max_colors: usize,
    max_solutions: usize,
    budget: usize,
) -> Result<NaturalSearch> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for n in 0..=max_colors {
        xs.push(enumerate_colorings(g1, n, budget)?);
        ys.push(enumerate_colorings(g2, n, budget)?);
    }
    if xs.iter().zip(&ys).any(|(x, y)| x.len() != y.len()) {
        return Ok(NaturalSearch {
            families: Vec::new(),
            complete: true,
        });
    }
    let push_table = |set: &ColoringSet, target: &ColoringSet, f: &Injection| -> Vec<usize> {
        set.colorings
            .iter()
            .map(|c| {
                let image = pushforward(f, c).expect("colors are in range");
                target.index_of(&image).expect("pushforward preserves properness")
            })
            .collect()
    };
    let mut pushes = vec![Vec::new(); max_colors + 1];
    for m in 0..=max_colors {
        for k in 0..=m {
            for f in Injection::all(k, m) {
                let px = push_table(&xs[k], &xs[m], &f);
                let py = push_table(&ys[k], &ys[m], &f);
                pushes[k].push((m, px, py));
            }
        }
    }
    let mut search = FamilySearch {
        table: xs.iter().map(|x| vec![None; x.len()]).collect(),
        used: ys.iter().map(|y| vec![false; y.len()]).collect(),
        trail: Vec::new(),
        pushes,
        solutions: Vec::new(),
        max_solutions,
    };
    let complete = search.solve();
    let (xs, ys) = (Arc::new(xs), Arc::new(ys));
    let families = search
        .solutions
        .into_iter()
        .map(|tables| TabulatedFamily {
            sources: Arc::clone(&xs),
            targets: Arc::clone(&ys),
            tables,
        })
        .collect();
    Ok(NaturalSearch { families, complete })
}

type PushTables = Vec<Vec<(usize, Vec<usize>, Vec<usize>)>>;

struct FamilySearch {
    table: Vec<Vec<Option<usize>>>,
    used: Vec<Vec<bool>>,
    trail: Vec<(usize, usize)>,
    pushes: PushTables,
    solutions: Vec<Vec<Vec<usize>>>,
    max_solutions: usize,
}

impl FamilySearch {
    /// Returns false if it stopped because enough solutions were found.
    fn solve(&mut self) -> bool {
        let next = self
            .table
            .iter()
            .enumerate()
            .find_map(|(n, row)| row.iter().position(Option::is_none).map(|x| (n, x)));
        let Some((n, x)) = next else {
            self.solutions.push(
                self.table
                    .iter()
                    .map(|row| row.iter().map(|y| y.unwrap()).collect())
                    .collect(),
            );
            return self.solutions.len() < self.max_solutions;
        };
        for y in 0..self.used[n].len() {
            if self.used[n][y] {
                continue;
            }
            let mark = self.trail.len();
            let consistent = self.assign(n, x, y);
            let keep_going = !consistent || self.solve();
            self.undo(mark);
            if !keep_going {
                return false;
            }
        }
        true
    }

    fn assign(&mut self, n: usize, x: usize, y: usize) -> bool {
        let mut work = vec![(n, x, y)];
        while let Some((n, x, y)) = work.pop() {
            match self.table[n][x] {
                Some(existing) if existing == y => continue,
                Some(_) => return false,
                None if self.used[n][y] => return false,
                None => {}
            }
            self.table[n][x] = Some(y);
            self.used[n][y] = true;
            self.trail.push((n, x));
            for (m, px, py) in &self.pushes[n] {
                work.push((*m, px[x], py[y]));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (n, x) = self.trail.pop().unwrap();
            let y = self.table[n][x].take().unwrap();
            self.used[n][y] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chromatic::chromatic_polynomial;
    use crate::partitions::DEFAULT_PARTITION_LIMIT;
    use crate::poly::evaluate;

    const BUDGET: usize = DEFAULT_COLORING_BUDGET;

    /// Wraps a family and swaps the images of two colorings at one level.
    struct Swapped<'a> {
        base: &'a NaturalBijection,
        level: usize,
        a: Coloring,
        b: Coloring,
    }

    impl ColoringFamily for Swapped<'_> {
        fn source(&self) -> &FiniteGraph {
            self.base.source()
        }
        fn target(&self) -> &FiniteGraph {
            self.base.target()
        }
        fn apply(&self, n: usize, c: &[usize]) -> Result<Coloring> {
            if n == self.level && c == self.a.as_slice() {
                self.base.apply(n, &self.b)
            } else if n == self.level && c == self.b.as_slice() {
                self.base.apply(n, &self.a)
            } else {
                self.base.apply(n, c)
            }
        }
    }

    #[test]
    fn coloring_enumeration() {
        let k3 = complete_graph(3);
        assert_eq!(enumerate_colorings(&k3, 3, BUDGET).unwrap().len(), 6);
        let p3 = FiniteGraph::path(3);
        let set = enumerate_colorings(&p3, 2, BUDGET).unwrap();
        assert_eq!(set.colorings, vec![vec![0, 1, 0], vec![1, 0, 1]]);
        assert!(enumerate_colorings(&p3, 0, BUDGET).unwrap().is_empty());
        assert_eq!(enumerate_colorings(&FiniteGraph::edgeless(0), 0, BUDGET).unwrap().len(), 1);
        assert!(matches!(
            enumerate_colorings(&FiniteGraph::edgeless(5), 4, 100),
            Err(Error::Resource(_))
        ));
        let c5 = FiniteGraph::cycle(5).unwrap();
        let p = chromatic_polynomial(&c5).unwrap();
        for n in 0..5 {
            let count = enumerate_colorings(&c5, n, BUDGET).unwrap().len();
            assert_eq!(evaluate(&p, n as i64), count.into());
        }
    }

    #[test]
    fn pushforward_examples() {
        assert_eq!(pushforward(&Injection::identity(3), &[2, 0, 1]).unwrap(), vec![2, 0, 1]);
        let f = Injection::new(3, vec![2, 0]).unwrap();
        assert_eq!(pushforward(&f, &[0, 1, 0]).unwrap(), vec![2, 0, 2]);
        assert!(matches!(pushforward(&f, &[0, 2]), Err(Error::Domain(_))));
        // Injective on χ(P_3, [2]) for every f: [2] -> [3].
        let p3 = FiniteGraph::path(3);
        let set = enumerate_colorings(&p3, 2, BUDGET).unwrap();
        for f in Injection::all(2, 3) {
            let images: HashSet<_> = set.colorings.iter().map(|c| pushforward(&f, c).unwrap()).collect();
            assert_eq!(images.len(), set.len());
        }
    }

    #[test]
    fn pullback_examples() {
        let p3 = FiniteGraph::path(3);
        assert_eq!(pullback(&GraphHom::identity(&p3), &[0, 1, 2]).unwrap(), vec![0, 1, 2]);
        let fold = GraphHom::new(p3.clone(), complete_graph(2), vec![0, 1, 0]);
        assert_eq!(pullback(&fold, &[0, 1]).unwrap(), vec![0, 1, 0]);
        assert!(matches!(pullback(&fold, &[1, 1]), Err(Error::Domain(_))));
        let set = enumerate_colorings(&complete_graph(2), 3, BUDGET).unwrap();
        let images: HashSet<_> = set.colorings.iter().map(|c| pullback(&fold, c).unwrap()).collect();
        assert_eq!(images.len(), set.len());
    }

    #[test]
    fn hom_encoding() {
        let k3 = complete_graph(3);
        let h = coloring_to_hom(&k3, &[1, 2, 0], 3).unwrap();
        assert!(crate::graph::is_surjective_hom(&h));
        assert!(coloring_to_hom(&k3, &[1, 1, 0], 3).is_err());
        let p4 = FiniteGraph::path(4);
        for c in enumerate_colorings(&p4, 3, BUDGET).unwrap().colorings {
            let h = coloring_to_hom(&p4, &c, 3).unwrap();
            assert_eq!(hom_to_coloring(&h).unwrap(), c);
        }
    }

    #[test]
    fn identity_matching_is_identity() {
        let g = FiniteGraph::cycle(5).unwrap();
        let r = build_natural_bijection(&g, &g, DEFAULT_PARTITION_LIMIT).unwrap();
        for n in 0..=4 {
            for c in enumerate_colorings(&g, n, BUDGET).unwrap().colorings {
                assert_eq!(r.apply(n, &c).unwrap(), c);
            }
        }
    }

    #[test]
    fn path_and_star_are_naturally_isomorphic() {
        let (p5, s4) = (FiniteGraph::path(5), FiniteGraph::star(4));
        let r = build_natural_bijection(&p5, &s4, DEFAULT_PARTITION_LIMIT).unwrap();
        for n in 0..=4 {
            assert!(verify_bijective(&r, n, BUDGET).unwrap());
        }
        assert!(verify_naturality(&r, &Injection::identity(3), BUDGET).unwrap());
        let cert = certify_natural_isomorphism(&r, 4, BUDGET).unwrap();
        assert!(cert.passed());
    }

    #[test]
    fn non_equivalent_pair_is_rejected() {
        let err = build_natural_bijection(&FiniteGraph::path(4), &FiniteGraph::cycle(4).unwrap(), 10).unwrap_err();
        match err {
            Error::Domain(msg) => assert!(msg.contains("St_3 is 3 vs 2"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn scrambled_family_is_not_natural() {
        let (p5, s4) = (FiniteGraph::path(5), FiniteGraph::star(4));
        let r = build_natural_bijection(&p5, &s4, DEFAULT_PARTITION_LIMIT).unwrap();
        // A 2-block and a 3-block coloring of P_5 in [3].
        let a = vec![0, 1, 0, 1, 0];
        let b = vec![0, 1, 2, 1, 0];
        let s = Swapped { base: &r, level: 3, a, b };
        assert!(verify_bijective(&s, 3, BUDGET).unwrap());
        let broken = (0..=3)
            .flat_map(|k| Injection::all(k, 3))
            .chain(Injection::all(3, 4))
            .any(|f| !verify_naturality(&s, &f, BUDGET).unwrap());
        assert!(broken);
    }

    #[test]
    fn yoneda_recovers_beta() {
        let fam = InducedFamily::new(vec![2, 0, 1]).unwrap();
        assert_eq!(yoneda_extract(&fam, 4, BUDGET).unwrap(), vec![2, 0, 1]);
        let trivial = InducedFamily::new(vec![0]).unwrap();
        assert_eq!(yoneda_extract(&trivial, 3, BUDGET).unwrap(), vec![0]);
    }

    #[test]
    fn yoneda_rejects_mismatched_sizes() {
        let r = find_natural_families(&complete_graph(2), &complete_graph(3), 1, 1, BUDGET).unwrap();
        // Level sizes agree up to [1] (both empty) so families exist there,
        // but extraction must refuse the size mismatch.
        let fam = &r.families[0];
        assert!(matches!(yoneda_extract(fam, 1, BUDGET), Err(Error::Domain(_))));
    }

    #[test]
    fn yoneda_rejects_unnatural_family() {
        let base = InducedFamily::new(vec![0, 1]).unwrap();
        struct Bent(InducedFamily);
        impl ColoringFamily for Bent {
            fn source(&self) -> &FiniteGraph {
                self.0.source()
            }
            fn target(&self) -> &FiniteGraph {
                self.0.target()
            }
            fn apply(&self, n: usize, c: &[usize]) -> Result<Coloring> {
                let mut d = self.0.apply(n, c)?;
                if n == 3 {
                    d.swap(0, 1);
                }
                Ok(d)
            }
        }
        assert!(matches!(yoneda_extract(&Bent(base), 3, BUDGET), Err(Error::Certification(_))));
    }

    #[test]
    fn natural_automorphisms_of_k2() {
        let k2 = complete_graph(2);
        let search = find_natural_families(&k2, &k2, 3, usize::MAX, BUDGET).unwrap();
        assert!(search.complete);
        let mut betas: Vec<_> = search
            .families
            .iter()
            .map(|f| yoneda_extract(f, 3, BUDGET).unwrap())
            .collect();
        betas.sort();
        assert_eq!(betas, vec![vec![0, 1], vec![1, 0]]);
        let k1 = complete_graph(1);
        let search = find_natural_families(&k1, &k1, 3, usize::MAX, BUDGET).unwrap();
        assert_eq!(search.families.len(), 1);
        assert_eq!(yoneda_extract(&search.families[0], 3, BUDGET).unwrap(), vec![0]);
    }

    #[test]
    fn block_multisets() {
        let ms = |g: &FiniteGraph| {
            let st = enumerate_stable_partitions(g, 10).unwrap();
            block_size_multiset(st.iter().map(StablePartition::partition))
        };
        assert_eq!(ms(&complete_graph(3)), BTreeMap::from([(3, 1)]));
        assert_eq!(ms(&FiniteGraph::complete_minus_edge(4).unwrap()), BTreeMap::from([(3, 1), (4, 1)]));
        assert_eq!(ms(&FiniteGraph::path(3)), BTreeMap::from([(2, 1), (3, 1)]));
    }

    #[test]
    fn decomposition_text() {
        let d = functor_decomposition(&FiniteGraph::complete_minus_edge(4).unwrap(), 10).unwrap();
        assert_eq!(d.to_string(), "χ(G, ·) ≅ χ(K_3, ·) ⊔ χ(K_4, ·)");
        assert_eq!(d.summand_count(), BigUint::from(2u8));
    }
}
