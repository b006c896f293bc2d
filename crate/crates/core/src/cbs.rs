//! The relative Cantor–Bernstein–Schröder construction.
//!
//! Given two commuting squares of injections
//!
//! ```text
//!   X1 --i1--> Y1        X1 <--j1-- Y1
//!   |f         |g        |f         |g
//!   X2 --i2--> Y2        X2 <--j2-- Y2
//! ```
//!
//! that are compatible with preimages, the back-and-forth sets
//! `C^0 = X \ j(Y)`, `C^{n+1} = j(i(C^n))` give bijections
//! `r = i` on `C = ∪ C^n`, `r = j^{-1}` off `C`, and `g ∘ r1 = r2 ∘ f`.
//!
//! Finite systems are handled explicitly ([`relative_cbs`]). For infinite
//! sets, membership in `C` is only semi-decidable; [`lazy_cbs_evaluate`]
//! traces the preimage chain with an explicit fuel bound.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::functor::{enumerate_colorings, pullback, pushforward, ColoringSet, TabulatedFamily};
use crate::graph::{is_surjective_hom, validate_hom, FiniteGraph, GraphHom, Injection};

/// A finite instance of the two squares. Elements of each set are the
/// indices `0..size`; maps are lookup tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectionSystem {
    pub x1: usize,
    pub x2: usize,
    pub y1: usize,
    pub y2: usize,
    /// `X1 -> X2`
    pub f: Vec<usize>,
    /// `Y1 -> Y2`
    pub g: Vec<usize>,
    /// `X1 -> Y1`
    pub i1: Vec<usize>,
    /// `X2 -> Y2`
    pub i2: Vec<usize>,
    /// `Y1 -> X1`
    pub j1: Vec<usize>,
    /// `Y2 -> X2`
    pub j2: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    One,
    Two,
}

fn check_map(name: &str, map: &[usize], from: usize, to: usize) -> Result<()> {
    if map.len() != from {
        return Err(Error::Structural(format!("{name} has {} entries for a set of {from}", map.len())));
    }
    if let Some((x, &y)) = map.iter().enumerate().find(|(_, &y)| y >= to) {
        return Err(Error::Structural(format!("{name}({x}) = {y} outside a set of {to}")));
    }
    Ok(())
}

fn check_injective(name: &str, map: &[usize], to: usize) -> Result<()> {
    let mut seen = vec![false; to];
    for (x, &y) in map.iter().enumerate() {
        if std::mem::replace(&mut seen[y], true) {
            return Err(Error::Precondition(format!("{name} is not injective: {y} is hit again by {x}")));
        }
    }
    Ok(())
}

fn preimage(map: &[usize], target: usize) -> Vec<usize> {
    map.iter()
        .enumerate()
        .filter(|&(_, &y)| y == target)
        .map(|(x, _)| x)
        .collect()
}

fn inverse_table(map: &[usize], to: usize) -> Vec<Option<usize>> {
    let mut inv = vec![None; to];
    for (x, &y) in map.iter().enumerate() {
        inv[y] = Some(x);
    }
    inv
}

impl InjectionSystem {
    /// Checks shapes, injectivity, both commuting squares and the preimage
    /// compatibility
    /// `g⁻¹(i2(Z)) = i1(f⁻¹(Z))`, `f⁻¹(j2(W)) = j1(g⁻¹(W))`.
    ///
    /// Compatibility is only checked for singletons `Z = {z}`, `W = {w}`:
    /// images and preimages both commute with unions, so the identities for
    /// all subsets follow from the singleton case.
    pub fn validate(&self) -> Result<()> {
        check_map("f", &self.f, self.x1, self.x2)?;
        check_map("g", &self.g, self.y1, self.y2)?;
        check_map("i1", &self.i1, self.x1, self.y1)?;
        check_map("i2", &self.i2, self.x2, self.y2)?;
        check_map("j1", &self.j1, self.y1, self.x1)?;
        check_map("j2", &self.j2, self.y2, self.x2)?;
        check_injective("i1", &self.i1, self.y1)?;
        check_injective("i2", &self.i2, self.y2)?;
        check_injective("j1", &self.j1, self.x1)?;
        check_injective("j2", &self.j2, self.x2)?;

        for x in 0..self.x1 {
            if self.g[self.i1[x]] != self.i2[self.f[x]] {
                return Err(Error::Precondition(format!("g∘i1 ≠ i2∘f at x = {x}")));
            }
        }
        for y in 0..self.y1 {
            if self.f[self.j1[y]] != self.j2[self.g[y]] {
                return Err(Error::Precondition(format!("f∘j1 ≠ j2∘g at y = {y}")));
            }
        }
        for z in 0..self.x2 {
            let mut lhs = preimage(&self.g, self.i2[z]);
            let mut rhs: Vec<usize> = preimage(&self.f, z).into_iter().map(|x| self.i1[x]).collect();
            lhs.sort_unstable();
            rhs.sort_unstable();
            if lhs != rhs {
                return Err(Error::Precondition(format!(
                    "g⁻¹(i2(Z)) ≠ i1(f⁻¹(Z)) for Z = {{{z}}}"
                )));
            }
        }
        for w in 0..self.y2 {
            let mut lhs = preimage(&self.f, self.j2[w]);
            let mut rhs: Vec<usize> = preimage(&self.g, w).into_iter().map(|y| self.j1[y]).collect();
            lhs.sort_unstable();
            rhs.sort_unstable();
            if lhs != rhs {
                return Err(Error::Precondition(format!(
                    "f⁻¹(j2(W)) ≠ j1(g⁻¹(W)) for W = {{{w}}}"
                )));
            }
        }
        Ok(())
    }

    fn level(&self, level: Level) -> (usize, usize, &[usize], &[usize]) {
        match level {
            Level::One => (self.x1, self.y1, &self.i1, &self.j1),
            Level::Two => (self.x2, self.y2, &self.i2, &self.j2),
        }
    }
}

/// The bijections and the back-and-forth layers `C^0, C^1, ...` of each
/// level (the last layer listed is the first empty one).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CbsResult {
    pub r1: Vec<usize>,
    pub r2: Vec<usize>,
    pub c1_layers: Vec<Vec<usize>>,
    pub c2_layers: Vec<Vec<usize>>,
}

impl CbsResult {
    pub fn c1(&self) -> Vec<usize> {
        union(&self.c1_layers)
    }

    pub fn c2(&self) -> Vec<usize> {
        union(&self.c2_layers)
    }
}

fn union(layers: &[Vec<usize>]) -> Vec<usize> {
    let mut all: Vec<usize> = layers.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all
}

/// Layers `C^n` for one level until they become empty. The layers are
/// pairwise disjoint (`C^0` avoids `j(Y)`, later layers lie inside it and
/// `j∘i` is injective), so at most `|X|` of them are nonempty.
fn back_and_forth_layers(x_size: usize, i: &[usize], j: &[usize]) -> Vec<Vec<usize>> {
    let mut in_j_image = vec![false; x_size];
    for &x in j {
        in_j_image[x] = true;
    }
    let mut layer: Vec<usize> = (0..x_size).filter(|&x| !in_j_image[x]).collect();
    let mut layers = Vec::new();
    loop {
        let next: Vec<usize> = layer.iter().map(|&x| j[i[x]]).collect();
        let done = layer.is_empty();
        layers.push(layer);
        if done || layers.len() > x_size {
            break;
        }
        layer = next;
    }
    layers
}

fn assemble(x_size: usize, y_size: usize, i: &[usize], j: &[usize], layers: &[Vec<usize>]) -> Vec<usize> {
    let mut in_c = vec![false; x_size];
    for &x in layers.iter().flatten() {
        in_c[x] = true;
    }
    let j_inv = inverse_table(j, x_size);
    (0..x_size)
        .map(|x| {
            if in_c[x] {
                i[x]
            } else {
                j_inv[x].expect("elements outside C^0 lie in the image of j")
            }
        })
        .inspect(|&y| debug_assert!(y < y_size))
        .collect()
}

pub fn relative_cbs(sys: &InjectionSystem) -> Result<CbsResult> {
    sys.validate()?;
    let mut out = Vec::new();
    for level in [Level::One, Level::Two] {
        let (xs, ys, i, j) = sys.level(level);
        let layers = back_and_forth_layers(xs, i, j);
        let r = assemble(xs, ys, i, j, &layers);
        out.push((r, layers));
    }
    let (r2, c2_layers) = out.pop().unwrap();
    let (r1, c1_layers) = out.pop().unwrap();
    Ok(CbsResult {
        r1,
        r2,
        c1_layers,
        c2_layers,
    })
}

/// The classical construction for injections `f : A -> B`, `g : B -> A`:
/// `r = f` on `C = ∪ (g∘f)^n (A \ g(B))`, `r = g⁻¹` elsewhere.
pub fn classic_cbs(f: &Injection, g: &Injection) -> Result<Vec<usize>> {
    if f.target_size() != g.source_size() || g.target_size() != f.source_size() {
        return Err(Error::Domain(format!(
            "f : [{}] -> [{}] and g : [{}] -> [{}] do not go back and forth",
            f.source_size(),
            f.target_size(),
            g.source_size(),
            g.target_size()
        )));
    }
    let a = f.source_size();
    let mut in_c = vec![true; a];
    for &x in g.as_slice() {
        in_c[x] = false;
    }
    let mut frontier: Vec<usize> = (0..a).filter(|&x| in_c[x]).collect();
    while let Some(x) = frontier.pop() {
        let next = g.apply(f.apply(x));
        if !in_c[next] {
            in_c[next] = true;
            frontier.push(next);
        }
    }
    let g_inv = inverse_table(g.as_slice(), a);
    Ok((0..a)
        .map(|x| if in_c[x] { f.apply(x) } else { g_inv[x].expect("x lies in g(B)") })
        .collect())
}

/// One level `(i : X -> Y, j : Y -> X)` of a possibly infinite system,
/// given by procedures rather than tables.
pub trait LazyInjectionPair {
    type X: Clone + PartialEq;
    type Y: Clone;

    fn i(&self, x: &Self::X) -> Result<Self::Y>;
    /// `Some(y)` with `j(y) = x`, or `None` if `x ∉ j(Y)`.
    fn j_preimage(&self, x: &Self::X) -> Result<Option<Self::Y>>;
    /// `Some(x)` with `i(x) = y`, or `None` if `y ∉ i(X)`.
    fn i_preimage(&self, y: &Self::Y) -> Result<Option<Self::X>>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LazyOutcome<Y> {
    Determined {
        image: Y,
        in_c: bool,
        /// Backward steps taken to decide.
        steps: usize,
    },
    Undetermined {
        reached: usize,
    },
}

/// Evaluates `r(x)` by walking `x ← j ← i ← j ← ...` backwards.
///
/// * The chain stops in `X \ j(Y)`: `x ∈ C`, `r(x) = i(x)`.
/// * The chain stops in `Y \ i(X)`, or returns to `x`: `x ∉ C`,
///   `r(x) = j⁻¹(x)`.
/// * Each `j⁻¹` then `i⁻¹` round costs one unit of fuel; running out is
///   reported as `Undetermined`.
pub fn lazy_cbs_evaluate<P: LazyInjectionPair>(pair: &P, x: &P::X, fuel: usize) -> Result<LazyOutcome<P::Y>> {
    let mut current = x.clone();
    let mut steps = 0;
    loop {
        let Some(y) = pair.j_preimage(&current).map_err(|e| oracle_context(e, steps))? else {
            return Ok(LazyOutcome::Determined {
                image: pair.i(x)?,
                in_c: true,
                steps,
            });
        };
        if steps == fuel {
            return Ok(LazyOutcome::Undetermined { reached: steps });
        }
        steps += 1;
        let previous = pair.i_preimage(&y).map_err(|e| oracle_context(e, steps))?;
        match previous {
            Some(p) if &p != x => current = p,
            _ => {
                let image = pair
                    .j_preimage(x)?
                    .ok_or_else(|| Error::Oracle("j-preimage of x vanished".into()))?;
                return Ok(LazyOutcome::Determined {
                    image,
                    in_c: false,
                    steps,
                });
            }
        }
    }
}

fn oracle_context(e: Error, steps: usize) -> Error {
    match e {
        Error::Oracle(msg) => Error::Oracle(format!("after {steps} backward steps: {msg}")),
        other => other,
    }
}

/// A level of a finite system viewed through the lazy interface.
pub struct FiniteLevel<'a> {
    i: &'a [usize],
    j_inv: Vec<Option<usize>>,
    i_inv: Vec<Option<usize>>,
}

impl<'a> FiniteLevel<'a> {
    pub fn new(sys: &'a InjectionSystem, level: Level) -> Self {
        let (xs, ys, i, j) = sys.level(level);
        FiniteLevel {
            i,
            j_inv: inverse_table(j, xs),
            i_inv: inverse_table(i, ys),
        }
    }
}

impl LazyInjectionPair for FiniteLevel<'_> {
    type X = usize;
    type Y = usize;

    fn i(&self, x: &usize) -> Result<usize> {
        self.i.get(*x).copied().ok_or_else(|| Error::Oracle(format!("{x} is not in X")))
    }

    fn j_preimage(&self, x: &usize) -> Result<Option<usize>> {
        self.j_inv.get(*x).copied().ok_or_else(|| Error::Oracle(format!("{x} is not in X")))
    }

    fn i_preimage(&self, y: &usize) -> Result<Option<usize>> {
        self.i_inv.get(*y).copied().ok_or_else(|| Error::Oracle(format!("{y} is not in Y")))
    }
}

/// The relative construction on coloring sets: for surjections
/// `phi : g1 ↠ g2`, `psi : g2 ↠ g1` and a color injection `f : [m] -> [n]`,
/// `X = χ(g1, ·)`, `Y = χ(g2, ·)`, vertical maps `f_*`, `i = psi^*`,
/// `j = phi^*`.
#[derive(Clone, Debug)]
pub struct ChromaticCbs {
    pub x1: ColoringSet,
    pub x2: ColoringSet,
    pub y1: ColoringSet,
    pub y2: ColoringSet,
    pub system: InjectionSystem,
    pub result: CbsResult,
}

impl ChromaticCbs {
    /// `r_{[m]}` as `(index in χ(g1, [m]), index in χ(g2, [m]))` pairs.
    pub fn pairs_small(&self) -> Vec<(usize, usize)> {
        self.result.r1.iter().copied().enumerate().collect()
    }

    pub fn pairs_large(&self) -> Vec<(usize, usize)> {
        self.result.r2.iter().copied().enumerate().collect()
    }
}

pub fn chromatic_cbs(
    g1: &FiniteGraph,
    g2: &FiniteGraph,
    phi: &GraphHom,
    psi: &GraphHom,
    f: &Injection,
    budget: usize,
) -> Result<ChromaticCbs> {
    if &phi.source != g1 || &phi.target != g2 || &psi.source != g2 || &psi.target != g1 {
        return Err(Error::Structural("phi must map g1 to g2 and psi g2 to g1".into()));
    }
    for (name, h) in [("phi", phi), ("psi", psi)] {
        if !validate_hom(h)? {
            return Err(Error::Domain(format!("{name} is not a homomorphism")));
        }
        if !is_surjective_hom(h) {
            return Err(Error::Domain(format!("{name} is not surjective")));
        }
    }
    let (m, n) = (f.source_size(), f.target_size());
    let x1 = enumerate_colorings(g1, m, budget)?;
    let x2 = enumerate_colorings(g1, n, budget)?;
    let y1 = enumerate_colorings(g2, m, budget)?;
    let y2 = enumerate_colorings(g2, n, budget)?;

    let table = |from: &ColoringSet, to: &ColoringSet, op: &dyn Fn(&[usize]) -> Result<Vec<usize>>| -> Result<Vec<usize>> {
        from.colorings
            .iter()
            .map(|c| {
                let image = op(c)?;
                to.index_of(&image)
                    .ok_or_else(|| Error::Structural(format!("{image:?} is not a proper coloring")))
            })
            .collect()
    };
    let system = InjectionSystem {
        x1: x1.len(),
        x2: x2.len(),
        y1: y1.len(),
        y2: y2.len(),
        f: table(&x1, &x2, &|c| pushforward(f, c))?,
        g: table(&y1, &y2, &|c| pushforward(f, c))?,
        i1: table(&x1, &y1, &|c| pullback(psi, c))?,
        i2: table(&x2, &y2, &|c| pullback(psi, c))?,
        j1: table(&y1, &x1, &|c| pullback(phi, c))?,
        j2: table(&y2, &x2, &|c| pullback(phi, c))?,
    };
    let result = relative_cbs(&system)?;
    Ok(ChromaticCbs {
        x1,
        x2,
        y1,
        y2,
        system,
        result,
    })
}

/// Assembles the bijections `r_{[n]}` produced by [`chromatic_cbs`] for
/// every injection `[m] -> [n]`, `m <= n <= max_colors`, into one family.
/// Fails with a certification error if two injections disagree on some
/// `r_{[n]}`.
pub fn chromatic_cbs_family(
    g1: &FiniteGraph,
    g2: &FiniteGraph,
    phi: &GraphHom,
    psi: &GraphHom,
    max_colors: usize,
    budget: usize,
) -> Result<TabulatedFamily> {
    let mut tables: Vec<Option<Vec<usize>>> = vec![None; max_colors + 1];
    let mut record = |n: usize, r: &[usize]| -> Result<()> {
        match &tables[n] {
            Some(existing) if existing != r => Err(Error::Certification(format!(
                "two injections produce different bijections on [{n}]-colorings"
            ))),
            Some(_) => Ok(()),
            None => {
                tables[n] = Some(r.to_vec());
                Ok(())
            }
        }
    };
    for n in 0..=max_colors {
        for m in 0..=n {
            for f in Injection::all(m, n) {
                let out = chromatic_cbs(g1, g2, phi, psi, &f, budget)?;
                record(m, &out.result.r1)?;
                record(n, &out.result.r2)?;
            }
        }
    }
    let mut sources = Vec::new();
    let mut targets = Vec::new();
    for n in 0..=max_colors {
        sources.push(enumerate_colorings(g1, n, budget)?);
        targets.push(enumerate_colorings(g2, n, budget)?);
    }
    TabulatedFamily::new(sources, targets, tables.into_iter().map(Option::unwrap).collect())
}

/// Checks `f⁻¹(C_2^n) = C_1^n` for every layer index `n`.
pub fn layers_are_preimages(sys: &InjectionSystem, res: &CbsResult) -> bool {
    let depth = res.c1_layers.len().max(res.c2_layers.len());
    (0..depth).all(|n| {
        let mut in_c2 = vec![false; sys.x2];
        for &x in res.c2_layers.get(n).map(Vec::as_slice).unwrap_or(&[]) {
            in_c2[x] = true;
        }
        let mut pre: Vec<usize> = (0..sys.x1).filter(|&x| in_c2[sys.f[x]]).collect();
        let mut layer = res.c1_layers.get(n).cloned().unwrap_or_default();
        pre.sort_unstable();
        layer.sort_unstable();
        pre == layer
    })
}

/// A random finite system whose squares are fiber products by
/// construction, so the compatibility condition holds.
///
/// `i2` and `j2` are random bijections of `X2 ≅ Y2`; `g` has random fibers
/// whose sizes are constant along orbits of `i2∘j2`; `X1` is the pullback of
/// `g` along `i2`; `j1` maps each fiber of `g` over `w` bijectively onto the
/// fiber of `f` over `j2(w)`. Every set is shuffled so indices carry no
/// structure.
pub fn random_fiber_product_system<R: Rng + ?Sized>(rng: &mut R, max_base: usize, max_fiber: usize) -> InjectionSystem {
    let base = rng.random_range(1..=max_base.max(1));
    let mut i2: Vec<usize> = (0..base).collect();
    i2.shuffle(rng);
    let mut j2: Vec<usize> = (0..base).collect();
    j2.shuffle(rng);

    // Orbits of w -> i2(j2(w)) on Y2.
    let mut fiber_size = vec![usize::MAX; base];
    for start in 0..base {
        if fiber_size[start] != usize::MAX {
            continue;
        }
        let size = rng.random_range(0..=max_fiber);
        let mut w = start;
        while fiber_size[w] == usize::MAX {
            fiber_size[w] = size;
            w = i2[j2[w]];
        }
    }

    // Y1: shuffled list of (w, slot) with g = w.
    let mut y1_elems: Vec<(usize, usize)> = (0..base)
        .flat_map(|w| (0..fiber_size[w]).map(move |s| (w, s)))
        .collect();
    y1_elems.shuffle(rng);
    let g: Vec<usize> = y1_elems.iter().map(|&(w, _)| w).collect();

    // X1 = {(z, y) : i2(z) = g(y)}, one element per y; shuffled.
    let i2_inv = inverse_table(&i2, base);
    let mut x1_elems: Vec<(usize, usize)> = (0..g.len()).map(|y| (i2_inv[g[y]].unwrap(), y)).collect();
    x1_elems.shuffle(rng);
    let f: Vec<usize> = x1_elems.iter().map(|&(z, _)| z).collect();
    let mut i1 = vec![0; x1_elems.len()];
    for (x, &(_, y)) in x1_elems.iter().enumerate() {
        i1[x] = y;
    }

    // j1: fiber of g over w -> fiber of f over j2(w), by a random bijection.
    let mut j1 = vec![0; g.len()];
    for w in 0..base {
        let mut sources: Vec<usize> = (0..g.len()).filter(|&y| g[y] == w).collect();
        let targets: Vec<usize> = (0..f.len()).filter(|&x| f[x] == j2[w]).collect();
        debug_assert_eq!(sources.len(), targets.len());
        sources.shuffle(rng);
        for (y, x) in sources.into_iter().zip(targets) {
            j1[y] = x;
        }
    }

    InjectionSystem {
        x1: f.len(),
        x2: base,
        y1: g.len(),
        y2: base,
        f,
        g,
        i1,
        i2,
        j1,
        j2,
    }
}
