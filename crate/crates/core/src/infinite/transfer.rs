//! Transfer digraphs of strips and the cardinality of their coloring sets.
//!
//! States are proper colorings of one cell; an arc `a -> b` means cell `t`
//! colored `a` and cell `t + 1` colored `b` agree on every inter-cell edge.
//! Colorings of a one-way strip are then infinite walks from a start state
//! (weighted by the number of compatible head colorings), and colorings of a
//! two-way strip are bi-infinite walks.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::strip::{StripSpec, StripVertex};
use crate::error::{Error, Result};
use crate::functor::enumerate_colorings;

pub const DEFAULT_STATE_BUDGET: usize = 1_000_000;
/// How many eventually periodic colorings a report lists at most.
pub const WITNESS_LIMIT: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cardinality {
    Finite(BigUint),
    Aleph0,
    Continuum,
}

impl Cardinality {
    pub fn finite(n: u64) -> Self {
        Cardinality::Finite(BigUint::from(n))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Cardinality::Finite(n) if n.is_zero())
    }

    fn rank(&self) -> u8 {
        match self {
            Cardinality::Finite(_) => 0,
            Cardinality::Aleph0 => 1,
            Cardinality::Continuum => 2,
        }
    }
}

impl Ord for Cardinality {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cardinality::Finite(a), Cardinality::Finite(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Cardinality {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Aleph0 => f.write_str("ℵ₀"),
            Cardinality::Continuum => f.write_str("2^ℵ₀"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum CardinalityRepr {
    Finite(String),
    Aleph0,
    Continuum,
}

impl Serialize for Cardinality {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cardinality::Finite(n) => CardinalityRepr::Finite(n.to_string()),
            Cardinality::Aleph0 => CardinalityRepr::Aleph0,
            Cardinality::Continuum => CardinalityRepr::Continuum,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cardinality {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        Ok(match CardinalityRepr::deserialize(d)? {
            CardinalityRepr::Finite(n) => Cardinality::Finite(n.parse().map_err(D::Error::custom)?),
            CardinalityRepr::Aleph0 => Cardinality::Aleph0,
            CardinalityRepr::Continuum => Cardinality::Continuum,
        })
    }
}

pub type CellColoring = Vec<usize>;

#[derive(Clone, Debug)]
pub struct TransferDigraph {
    pub spec: StripSpec,
    pub colors: usize,
    pub states: Vec<CellColoring>,
    pub succ: Vec<Vec<usize>>,
    /// Head colorings compatible with each state placed in cell 0; all 1
    /// without a head.
    pub start_weights: Vec<BigUint>,
    pub head_colorings: Vec<Vec<usize>>,
}

pub fn build_transfer_digraph(spec: &StripSpec, colors: usize) -> Result<TransferDigraph> {
    build_transfer_digraph_with_budget(spec, colors, DEFAULT_STATE_BUDGET)
}

pub fn build_transfer_digraph_with_budget(spec: &StripSpec, colors: usize, budget: usize) -> Result<TransferDigraph> {
    spec.validate()?;
    let raw = (colors as f64).powi(spec.cell_size as i32);
    if raw > budget as f64 {
        return Err(Error::Resource(format!(
            "{colors}^{} candidate cell colorings exceed the state budget {budget}",
            spec.cell_size
        )));
    }
    let states = enumerate_colorings(&spec.cell_graph(), colors, budget)?.colorings;
    let compatible = |a: &[usize], b: &[usize]| spec.inter.iter().all(|&(u, v)| a[u] != b[v]);
    let succ: Vec<Vec<usize>> = states
        .iter()
        .map(|a| (0..states.len()).filter(|&j| compatible(a, &states[j])).collect())
        .collect();
    let (start_weights, head_colorings) = match &spec.head {
        None => (vec![BigUint::one(); states.len()], Vec::new()),
        Some(head) => {
            let heads = enumerate_colorings(head, colors, budget)?.colorings;
            let tail = head.vertex_count() - spec.cell_size;
            let weights = states
                .iter()
                .map(|s| BigUint::from(heads.iter().filter(|h| compatible(&h[tail..], s)).count()))
                .collect();
            (weights, heads)
        }
    };
    Ok(TransferDigraph {
        spec: spec.clone(),
        colors,
        states,
        succ,
        start_weights,
        head_colorings,
    })
}

impl TransferDigraph {
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn arc_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// Number of proper colorings of [`StripSpec::truncation`] with `cells`
    /// cells: weighted walks through `cells` states.
    pub fn path_count(&self, cells: usize) -> BigUint {
        if cells == 0 {
            return if self.spec.head.is_some() {
                BigUint::from(self.head_colorings.len())
            } else {
                BigUint::one()
            };
        }
        let mut ways = self.start_weights.clone();
        for _ in 1..cells {
            let mut next = vec![BigUint::zero(); self.states.len()];
            for (a, w) in ways.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                for &b in &self.succ[a] {
                    next[b] += w;
                }
            }
            ways = next;
        }
        ways.into_iter().sum()
    }

    fn pred(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.states.len()];
        for (a, list) in self.succ.iter().enumerate() {
            for &b in list {
                pred[b].push(a);
            }
        }
        pred
    }

    fn is_start(&self, s: usize) -> bool {
        self.spec.two_way || !self.start_weights[s].is_zero()
    }

    /// States through which a coloring of the whole strip can pass.
    ///
    /// One-way: reachable from a start state and with an infinite forward
    /// continuation. Two-way: with both an infinite past and an infinite
    /// future. Computed by removing dead states until nothing changes; the
    /// second value is the number of removal rounds.
    pub fn live_states(&self) -> (Vec<bool>, usize) {
        self.live_states_from(vec![true; self.states.len()])
    }

    /// The removal loop started from an arbitrary candidate set.
    pub fn live_states_from(&self, mut live: Vec<bool>) -> (Vec<bool>, usize) {
        let pred = self.pred();
        let mut rounds = 0;
        loop {
            let dead: Vec<usize> = (0..self.states.len())
                .filter(|&s| live[s])
                .filter(|&s| {
                    let forward = self.succ[s].iter().any(|&t| live[t]);
                    let backward = !self.spec.two_way || pred[s].iter().any(|&t| live[t]);
                    !(forward && backward)
                })
                .collect();
            if dead.is_empty() {
                break;
            }
            rounds += 1;
            for s in dead {
                live[s] = false;
            }
        }
        if !self.spec.two_way {
            // Keep what a start state can reach without leaving the live set.
            let mut reach = vec![false; self.states.len()];
            let mut stack: Vec<usize> = (0..self.states.len()).filter(|&s| live[s] && self.is_start(s)).collect();
            for &s in &stack {
                reach[s] = true;
            }
            while let Some(s) = stack.pop() {
                for &t in &self.succ[s] {
                    if live[t] && !reach[t] {
                        reach[t] = true;
                        stack.push(t);
                    }
                }
            }
            live = reach;
        }
        (live, rounds)
    }
}

/// A coloring of a strip that repeats from some cell on (and, on two-way
/// strips, before cell `0` as well).
///
/// One-way: `head` colors the head, `prefix` covers cells `0..prefix.len()`,
/// then `period` repeats forever. Two-way: `prefix` is empty and `period`
/// repeats in both directions with `period[0]` at cell `0`, unless `past`
/// is given, in which case cells `..-1` repeat `past` backwards (cell `-1`
/// is `past.last()`) and cells `0..` follow `prefix` and then `period`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicColoring {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub head: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub past: Vec<CellColoring>,
    pub prefix: Vec<CellColoring>,
    pub period: Vec<CellColoring>,
}

impl PeriodicColoring {
    pub fn cell(&self, t: i64) -> &CellColoring {
        if t < 0 {
            let source = if self.past.is_empty() { &self.period } else { &self.past };
            let len = source.len() as i64;
            let i = if self.past.is_empty() { t.rem_euclid(len) } else { (len + (t % len)) % len };
            return &source[i as usize];
        }
        let t = t as usize;
        if t < self.prefix.len() {
            &self.prefix[t]
        } else {
            &self.period[(t - self.prefix.len()) % self.period.len()]
        }
    }

    /// Color of an enumerated vertex of `spec`.
    pub fn color_of(&self, spec: &StripSpec, v: u64) -> usize {
        match spec.locate(v) {
            StripVertex::Head(i) => self.head[i],
            StripVertex::Cell { cell, offset } => self.cell(cell)[offset],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The colorings, listed in full up to [`WITNESS_LIMIT`].
    Enumerated {
        colorings: Vec<PeriodicColoring>,
        complete: bool,
    },
    /// A cycle of states with an arc leaving it: staying on the cycle for
    /// `k` rounds before leaving gives a different coloring for every `k`.
    Exit {
        cycle: Vec<CellColoring>,
        exit_from: CellColoring,
        exit_to: CellColoring,
    },
    /// A state with two successors in its own strongly connected component,
    /// and two colorings that agree before `differ_at` and not there.
    Branching {
        state: CellColoring,
        successors: [CellColoring; 2],
        colorings: [PeriodicColoring; 2],
        differ_at: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripAnalysis {
    pub colors: usize,
    pub cardinality: Cardinality,
    pub states: usize,
    pub arcs: usize,
    pub live_states: usize,
    pub witness: Witness,
}

struct Structure {
    live: Vec<bool>,
    /// Component id of each live state.
    comp: Vec<usize>,
    comp_members: Vec<Vec<usize>>,
}

impl TransferDigraph {
    fn structure(&self) -> Structure {
        let (live, _) = self.live_states();
        let mut graph = DiGraph::<usize, ()>::new();
        let mut node = HashMap::new();
        for s in (0..self.states.len()).filter(|&s| live[s]) {
            node.insert(s, graph.add_node(s));
        }
        for s in (0..self.states.len()).filter(|&s| live[s]) {
            for &t in self.succ[s].iter().filter(|&&t| live[t]) {
                graph.add_edge(node[&s], node[&t], ());
            }
        }
        let mut comp = vec![usize::MAX; self.states.len()];
        let mut comp_members = Vec::new();
        for scc in tarjan_scc(&graph) {
            let mut members: Vec<usize> = scc.into_iter().map(|n| graph[n]).collect();
            members.sort_unstable();
            for &s in &members {
                comp[s] = comp_members.len();
            }
            comp_members.push(members);
        }
        Structure {
            live,
            comp,
            comp_members,
        }
    }

    fn live_succ<'a>(&'a self, st: &'a Structure, s: usize) -> impl Iterator<Item = usize> + 'a {
        self.succ[s].iter().copied().filter(move |&t| st.live[t])
    }

    fn on_cycle(&self, st: &Structure, s: usize) -> bool {
        st.comp_members[st.comp[s]].len() > 1 || self.succ[s].contains(&s)
    }

    /// Shortest path `from -> to` inside the component of `from`.
    fn path_in_component(&self, st: &Structure, from: usize, to: usize) -> Vec<usize> {
        let c = st.comp[from];
        let mut parent = HashMap::from([(from, from)]);
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(s) = queue.pop_front() {
            if s == to {
                break;
            }
            for t in self.live_succ(st, s).filter(|&t| st.comp[t] == c) {
                parent.entry(t).or_insert_with(|| {
                    queue.push_back(t);
                    s
                });
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[&cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// A closed walk `s -> next -> ... -> s`, listed without the final `s`.
    fn loop_through(&self, st: &Structure, s: usize, next: usize) -> Vec<usize> {
        let mut walk = vec![s];
        if next != s {
            walk.extend(self.path_in_component(st, next, s));
            walk.pop();
        }
        walk
    }

    /// Shortest path from a start state to `target` through live states.
    fn path_from_start(&self, st: &Structure, target: usize) -> Vec<usize> {
        let mut parent: HashMap<usize, Option<usize>> = HashMap::new();
        let mut queue = std::collections::VecDeque::new();
        for s in (0..self.states.len()).filter(|&s| st.live[s] && self.is_start(s)) {
            parent.insert(s, None);
            queue.push_back(s);
        }
        while let Some(s) = queue.pop_front() {
            if s == target {
                break;
            }
            for t in self.live_succ(st, s) {
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(t) {
                    e.insert(Some(s));
                    queue.push_back(t);
                }
            }
        }
        let mut path = vec![target];
        let mut cur = target;
        while let Some(Some(p)) = parent.get(&cur) {
            cur = *p;
            path.push(cur);
        }
        path.reverse();
        path
    }

    fn cells(&self, walk: &[usize]) -> Vec<CellColoring> {
        walk.iter().map(|&s| self.states[s].clone()).collect()
    }

    fn first_head(&self, state: usize) -> Vec<usize> {
        match &self.spec.head {
            None => Vec::new(),
            Some(head) => {
                let tail = head.vertex_count() - self.spec.cell_size;
                self.head_colorings
                    .iter()
                    .find(|h| self.spec.inter.iter().all(|&(u, v)| h[tail + u] != self.states[state][v]))
                    .cloned()
                    .expect("start states have a compatible head coloring")
            }
        }
    }

    pub fn analyze(&self) -> StripAnalysis {
        let st = self.structure();
        let live_count = st.live.iter().filter(|&&b| b).count();
        let (cardinality, witness) = self.classify(&st);
        StripAnalysis {
            colors: self.colors,
            cardinality,
            states: self.state_count(),
            arcs: self.arc_count(),
            live_states: live_count,
            witness,
        }
    }

    fn classify(&self, st: &Structure) -> (Cardinality, Witness) {
        let live: Vec<usize> = (0..self.states.len()).filter(|&s| st.live[s]).collect();

        for &s in &live {
            let inside: Vec<usize> = self.live_succ(st, s).filter(|&t| st.comp[t] == st.comp[s]).collect();
            if inside.len() >= 2 {
                return (Cardinality::Continuum, self.branching_witness(st, s, inside[0], inside[1]));
            }
        }

        for &s in &live {
            if !self.on_cycle(st, s) {
                continue;
            }
            if let Some(t) = self.live_succ(st, s).find(|&t| st.comp[t] != st.comp[s]) {
                let next = self.live_succ(st, s).find(|&t| st.comp[t] == st.comp[s]).expect("s lies on a cycle");
                let cycle = self.loop_through(st, s, next);
                return (
                    Cardinality::Aleph0,
                    Witness::Exit {
                        cycle: self.cells(&cycle),
                        exit_from: self.states[s].clone(),
                        exit_to: self.states[t].clone(),
                    },
                );
            }
        }

        let mut colorings = Vec::new();
        let mut complete = true;
        let count = if self.spec.two_way {
            // Every live state lies on exactly one cycle with no exits, so
            // each cycle contributes one coloring per phase.
            for &s in &live {
                let next = self.live_succ(st, s).next().expect("live states continue");
                let period = self.cells(&self.loop_through(st, s, next));
                if colorings.len() < WITNESS_LIMIT {
                    colorings.push(PeriodicColoring {
                        head: Vec::new(),
                        past: Vec::new(),
                        prefix: Vec::new(),
                        period,
                    });
                } else {
                    complete = false;
                }
            }
            BigUint::from(live.len())
        } else {
            let mut memo = HashMap::new();
            let mut total = BigUint::zero();
            for &s in live.iter().filter(|&&s| self.is_start(s)) {
                total += &self.start_weights[s] * self.ways(st, s, &mut memo);
                let heads: Vec<&Vec<usize>> = match &self.spec.head {
                    None => vec![],
                    Some(head) => {
                        let tail = head.vertex_count() - self.spec.cell_size;
                        self.head_colorings
                            .iter()
                            .filter(|h| self.spec.inter.iter().all(|&(u, v)| h[tail + u] != self.states[s][v]))
                            .collect()
                    }
                };
                let mut walks = Vec::new();
                complete &= self.enumerate_walks(st, s, &mut vec![s], &mut walks);
                for (prefix, period) in walks {
                    let head_list: Vec<Vec<usize>> = if self.spec.head.is_some() {
                        heads.iter().map(|h| h.to_vec()).collect()
                    } else {
                        vec![Vec::new()]
                    };
                    for head in head_list {
                        if colorings.len() >= WITNESS_LIMIT {
                            complete = false;
                            break;
                        }
                        colorings.push(PeriodicColoring {
                            head,
                            past: Vec::new(),
                            prefix: prefix.clone(),
                            period: period.clone(),
                        });
                    }
                }
            }
            total
        };
        (Cardinality::Finite(count), Witness::Enumerated { colorings, complete })
    }

    /// Number of infinite walks from `s` when every cycle is exitless.
    fn ways(&self, st: &Structure, s: usize, memo: &mut HashMap<usize, BigUint>) -> BigUint {
        if self.on_cycle(st, s) {
            return BigUint::one();
        }
        if let Some(w) = memo.get(&s) {
            return w.clone();
        }
        let succ: Vec<usize> = self.live_succ(st, s).collect();
        let w = succ.into_iter().map(|t| self.ways(st, t, memo)).sum::<BigUint>();
        memo.insert(s, w.clone());
        w
    }

    fn enumerate_walks(
        &self,
        st: &Structure,
        s: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<(Vec<CellColoring>, Vec<CellColoring>)>,
    ) -> bool {
        if out.len() >= WITNESS_LIMIT {
            return false;
        }
        if self.on_cycle(st, s) {
            let next = self.live_succ(st, s).next().expect("cycle states continue");
            let period = self.cells(&self.loop_through(st, s, next));
            out.push((self.cells(&path[..path.len() - 1]), period));
            return true;
        }
        let mut complete = true;
        for t in self.live_succ(st, s).collect::<Vec<_>>() {
            path.push(t);
            complete &= self.enumerate_walks(st, t, path, out);
            path.pop();
        }
        complete
    }

    fn branching_witness(&self, st: &Structure, s: usize, a: usize, b: usize) -> Witness {
        let loop_a = self.loop_through(st, s, a);
        let loop_b = self.loop_through(st, s, b);
        let (head, past, lead) = if self.spec.two_way {
            (Vec::new(), self.cells(&loop_a), Vec::new())
        } else {
            let mut lead = self.path_from_start(st, s);
            lead.pop();
            let start = lead.first().copied().unwrap_or(s);
            (self.first_head(start), Vec::new(), lead)
        };
        let first = PeriodicColoring {
            head: head.clone(),
            past: past.clone(),
            prefix: self.cells(&lead),
            period: self.cells(&loop_a),
        };
        let mut prefix = lead.clone();
        prefix.extend(&loop_b);
        let second = PeriodicColoring {
            head,
            past,
            prefix: self.cells(&prefix),
            period: self.cells(&loop_a),
        };
        Witness::Branching {
            state: self.states[s].clone(),
            successors: [self.states[a].clone(), self.states[b].clone()],
            colorings: [first, second],
            differ_at: lead.len() as i64 + 1,
        }
    }
}

/// Two colorings that agree on cells before `position` and differ there,
/// for any `position` past the witness' own branching point. Built by
/// looping around the first cycle until the branch is due.
pub fn branching_pair_at(td: &TransferDigraph, position: i64) -> Option<[PeriodicColoring; 2]> {
    let analysis = td.analyze();
    let Witness::Branching { colorings, differ_at, .. } = analysis.witness else {
        return None;
    };
    let [first, second] = colorings;
    let period = first.period.clone();
    let lead = first.prefix.clone();
    let loop_b: Vec<CellColoring> = second.prefix[lead.len()..].to_vec();
    if position < differ_at || (position - differ_at) % period.len() as i64 != 0 {
        return None;
    }
    let rounds = ((position - differ_at) / period.len() as i64) as usize;
    let mut prefix = lead;
    for _ in 0..rounds {
        prefix.extend(period.iter().cloned());
    }
    let delayed_first = PeriodicColoring {
        prefix: prefix.clone(),
        ..first.clone()
    };
    prefix.extend(loop_b);
    let delayed_second = PeriodicColoring { prefix, ..second };
    Some([delayed_first, delayed_second])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::infinite::strip::{integer_tree, triangle_ladder, triangulated_grid, CountableGraph};

    #[test]
    fn natural_tree_digraphs() {
        let t = CountableGraph::natural_tree_strip();
        let two = build_transfer_digraph(&t, 2).unwrap();
        assert_eq!((two.state_count(), two.arc_count()), (2, 2));
        assert_eq!(two.succ, vec![vec![1], vec![0]]);
        let three = build_transfer_digraph(&t, 3).unwrap();
        assert_eq!((three.state_count(), three.arc_count()), (3, 6));
        assert_eq!(two.analyze().cardinality, Cardinality::finite(2));
        assert_eq!(three.analyze().cardinality, Cardinality::Continuum);
        assert!(build_transfer_digraph(&t, 1).unwrap().analyze().cardinality.is_zero());
    }

    #[test]
    fn ladders_and_grid() {
        let g1 = build_transfer_digraph(&triangle_ladder(false), 3).unwrap().analyze();
        assert_eq!(g1.cardinality, Cardinality::Continuum);
        let g2 = build_transfer_digraph(&triangle_ladder(true), 3).unwrap().analyze();
        assert_eq!(g2.cardinality, Cardinality::finite(6));
        let g3 = build_transfer_digraph(&triangulated_grid(), 3).unwrap().analyze();
        assert_eq!(g3.cardinality, Cardinality::finite(6));
        for a in [&g2, &g3] {
            match &a.witness {
                Witness::Enumerated { colorings, complete } => assert!(*complete && colorings.len() == 6),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn countable_case() {
        // States 0 -> 0 (loop) and 0 -> 1 -> 1 (loop), starting at 0.
        let td = TransferDigraph {
            spec: CountableGraph::natural_tree_strip(),
            colors: 2,
            states: vec![vec![0], vec![1]],
            succ: vec![vec![0, 1], vec![1]],
            start_weights: vec![BigUint::one(), BigUint::zero()],
            head_colorings: vec![],
        };
        let a = td.analyze();
        assert_eq!(a.cardinality, Cardinality::Aleph0);
        assert!(matches!(a.witness, Witness::Exit { .. }));
    }

    #[test]
    fn two_way_counts_phases() {
        let z = integer_tree();
        assert_eq!(build_transfer_digraph(&z, 2).unwrap().analyze().cardinality, Cardinality::finite(2));
        assert_eq!(build_transfer_digraph(&z, 3).unwrap().analyze().cardinality, Cardinality::Continuum);
        // Bi-infinite walks in 0 -> 1 -> 1: only the constant walk at 1 and
        // walks that sit at 0 forever then move, which need a past at 0.
        let td = TransferDigraph {
            spec: z.clone(),
            colors: 2,
            states: vec![vec![0], vec![1]],
            succ: vec![vec![0, 1], vec![1]],
            start_weights: vec![BigUint::one(), BigUint::one()],
            head_colorings: vec![],
        };
        assert_eq!(td.analyze().cardinality, Cardinality::Aleph0);
        let td = TransferDigraph {
            succ: vec![vec![1], vec![1]],
            ..td
        };
        // 0 has no past: only the constant coloring at 1 survives.
        assert_eq!(td.analyze().cardinality, Cardinality::finite(1));
    }

    #[test]
    fn head_weights() {
        // Natural tree with a triangle head: the last head vertex is cell -1.
        let s = CountableGraph::natural_tree_strip()
            .with_head(crate::graph::complete_graph(3))
            .unwrap();
        let td = build_transfer_digraph(&s, 3).unwrap();
        assert_eq!(td.start_weights, vec![BigUint::from(4u8); 3]);
        assert_eq!(td.path_count(0), BigUint::from(6u8));
        assert_eq!(td.path_count(2), BigUint::from(24u8));
        let two = build_transfer_digraph(&s, 2).unwrap();
        assert!(two.analyze().cardinality.is_zero());
    }

    #[test]
    fn live_set_is_a_fixpoint() {
        for spec in [triangle_ladder(true), triangulated_grid(), integer_tree()] {
            for n in 1..=4 {
                let td = build_transfer_digraph(&spec, n).unwrap();
                let (live, rounds) = td.live_states();
                assert!(rounds <= td.state_count());
                let (again, more) = td.live_states_from(live.clone());
                assert_eq!((again, more), (live, 0));
            }
        }
    }

    #[test]
    fn branching_pairs_differ_where_requested() {
        let td = build_transfer_digraph(&CountableGraph::natural_tree_strip(), 3).unwrap();
        let Witness::Branching { differ_at, .. } = td.analyze().witness else {
            panic!("expected a branching witness");
        };
        let mut seen = 0;
        for position in differ_at..differ_at + 20 {
            if let Some([a, b]) = branching_pair_at(&td, position) {
                seen += 1;
                for t in 0..position {
                    assert_eq!(a.cell(t), b.cell(t));
                }
                assert_ne!(a.cell(position), b.cell(position));
            }
        }
        assert!(seen >= 5);
    }

    #[test]
    fn cardinality_json_and_order() {
        assert_eq!(serde_json::to_string(&Cardinality::finite(6)).unwrap(), r#"{"finite":"6"}"#);
        assert_eq!(serde_json::to_string(&Cardinality::Aleph0).unwrap(), r#""aleph0""#);
        assert_eq!(serde_json::to_string(&Cardinality::Continuum).unwrap(), r#""continuum""#);
        for c in [Cardinality::finite(0), Cardinality::Aleph0, Cardinality::Continuum] {
            let back: Cardinality = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
            assert_eq!(back, c);
        }
        assert!(Cardinality::finite(100) < Cardinality::Aleph0);
        assert!(Cardinality::Aleph0 < Cardinality::Continuum);
    }

    #[test]
    fn state_budget() {
        let wide = StripSpec::new(12, vec![], vec![], false).unwrap();
        assert!(matches!(build_transfer_digraph(&wide, 4), Err(Error::Resource(_))));
    }
}
