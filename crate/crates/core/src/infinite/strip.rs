//! Periodic strips and the closed set of supported countable families.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{complete_graph, FiniteGraph};
use crate::graph6::{emit_graph6, parse_graph6};

/// One period of a strip: `cell_size` vertices, edges inside a cell, and
/// edges `(u, v)` joining vertex `u` of cell `t` to vertex `v` of cell `t + 1`.
///
/// One-way strips have cells `0, 1, 2, ...`; two-way strips have a cell for
/// every integer. A one-way strip may carry a finite `head` whose last
/// `cell_size` vertices play the role of cell `-1`: they are joined to cell
/// `0` through `inter`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripSpec {
    pub cell_size: usize,
    pub intra: Vec<(usize, usize)>,
    pub inter: Vec<(usize, usize)>,
    pub two_way: bool,
    pub head: Option<FiniteGraph>,
}

/// Where an enumerated vertex of a strip sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StripVertex {
    Head(usize),
    Cell { cell: i64, offset: usize },
}

impl StripSpec {
    pub fn new(cell_size: usize, intra: Vec<(usize, usize)>, inter: Vec<(usize, usize)>, two_way: bool) -> Result<Self> {
        let spec = StripSpec {
            cell_size,
            intra,
            inter,
            two_way,
            head: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_head(mut self, head: FiniteGraph) -> Result<Self> {
        self.head = Some(head);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.cell_size == 0 {
            return Err(Error::Structural("a strip cell needs at least one vertex".into()));
        }
        for &(u, v) in &self.intra {
            if u >= self.cell_size || v >= self.cell_size {
                return Err(Error::Structural(format!("intra edge ({u}, {v}) outside a cell of {}", self.cell_size)));
            }
            if u == v {
                return Err(Error::Domain(format!("intra edge ({u}, {u}) is a self-loop")));
            }
        }
        for &(u, v) in &self.inter {
            if u >= self.cell_size || v >= self.cell_size {
                return Err(Error::Structural(format!("inter edge ({u}, {v}) outside a cell of {}", self.cell_size)));
            }
        }
        if let Some(head) = &self.head {
            if self.two_way {
                return Err(Error::Structural("a two-way strip has no head".into()));
            }
            if head.vertex_count() < self.cell_size {
                return Err(Error::Structural(format!(
                    "head has {} vertices, fewer than the cell size {}",
                    head.vertex_count(),
                    self.cell_size
                )));
            }
        }
        Ok(())
    }

    pub fn head_size(&self) -> usize {
        self.head.as_ref().map_or(0, FiniteGraph::vertex_count)
    }

    /// The `v`-th vertex in the enumeration: head vertices first, then cells
    /// `0, 1, 2, ...` (one-way) or `0, -1, 1, -2, 2, ...` (two-way).
    pub fn locate(&self, v: u64) -> StripVertex {
        let h = self.head_size() as u64;
        if v < h {
            return StripVertex::Head(v as usize);
        }
        let rest = v - h;
        let k = self.cell_size as u64;
        let (slot, offset) = (rest / k, (rest % k) as usize);
        let cell = if self.two_way { unzigzag(slot) } else { slot as i64 };
        StripVertex::Cell { cell, offset }
    }

    /// Inverse of [`StripSpec::locate`]; `None` for positions that do not exist.
    pub fn index(&self, at: StripVertex) -> Option<u64> {
        match at {
            StripVertex::Head(i) => (i < self.head_size()).then_some(i as u64),
            StripVertex::Cell { cell, offset } => {
                if offset >= self.cell_size || (!self.two_way && cell < 0) {
                    return None;
                }
                let slot = if self.two_way { zigzag(cell) } else { cell as u64 };
                Some(self.head_size() as u64 + slot * self.cell_size as u64 + offset as u64)
            }
        }
    }

    /// Neighbors of an enumerated vertex, sorted.
    pub fn neighbors(&self, v: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let k = self.cell_size;
        match self.locate(v) {
            StripVertex::Head(i) => {
                let head = self.head.as_ref().expect("head vertices exist only with a head");
                out.extend(head.neighbors(i).iter().map(|&w| w as u64));
                let h = head.vertex_count();
                if i + k >= h {
                    let u = i + k - h;
                    for &(a, b) in &self.inter {
                        if a == u {
                            out.extend(self.index(StripVertex::Cell { cell: 0, offset: b }));
                        }
                    }
                }
            }
            StripVertex::Cell { cell, offset } => {
                for &(a, b) in &self.intra {
                    if a == offset {
                        out.extend(self.index(StripVertex::Cell { cell, offset: b }));
                    }
                    if b == offset {
                        out.extend(self.index(StripVertex::Cell { cell, offset: a }));
                    }
                }
                for &(a, b) in &self.inter {
                    if a == offset {
                        out.extend(self.index(StripVertex::Cell { cell: cell + 1, offset: b }));
                    }
                    if b == offset {
                        if cell == 0 && self.head.is_some() {
                            out.push((self.head_size() - k + a) as u64);
                        } else {
                            out.extend(self.index(StripVertex::Cell { cell: cell - 1, offset: a }));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn adjacent(&self, u: u64, v: u64) -> bool {
        u != v && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// The finite graph on the head and cells `0..cells` (one-way), or on
    /// `cells` consecutive cells (two-way). Cell `t` occupies the indices
    /// `head + t * cell_size ..`.
    pub fn truncation(&self, cells: usize) -> FiniteGraph {
        let h = self.head_size();
        let k = self.cell_size;
        let mut edges = Vec::new();
        if let Some(head) = &self.head {
            edges.extend(head.edges());
            if cells > 0 {
                edges.extend(self.inter.iter().map(|&(a, b)| (h - k + a, h + b)));
            }
        }
        for t in 0..cells {
            let base = h + t * k;
            edges.extend(self.intra.iter().map(|&(a, b)| (base + a, base + b)));
            if t + 1 < cells {
                edges.extend(self.inter.iter().map(|&(a, b)| (base + a, base + k + b)));
            }
        }
        FiniteGraph::new(h + cells * k, edges).expect("validated strips unroll to simple graphs")
    }

    pub fn cell_graph(&self) -> FiniteGraph {
        FiniteGraph::new(self.cell_size, self.intra.iter().copied()).expect("validated cell")
    }
}

fn zigzag(cell: i64) -> u64 {
    if cell >= 0 {
        2 * cell as u64
    } else {
        2 * (-cell) as u64 - 1
    }
}

fn unzigzag(slot: u64) -> i64 {
    if slot.is_multiple_of(2) {
        (slot / 2) as i64
    } else {
        -(slot.div_ceil(2) as i64)
    }
}

#[derive(Serialize, Deserialize)]
struct StripRepr {
    cell: usize,
    intra: Vec<[usize; 2]>,
    inter: Vec<[usize; 2]>,
    two_way: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    head: Option<String>,
}

impl Serialize for StripSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StripRepr {
            cell: self.cell_size,
            intra: self.intra.iter().map(|&(a, b)| [a, b]).collect(),
            inter: self.inter.iter().map(|&(a, b)| [a, b]).collect(),
            two_way: self.two_way,
            head: self.head.as_ref().map(emit_graph6),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StripSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = StripRepr::deserialize(d)?;
        let head = repr.head.as_deref().map(parse_graph6).transpose().map_err(D::Error::custom)?;
        let spec = StripSpec {
            cell_size: repr.cell,
            intra: repr.intra.into_iter().map(|[a, b]| (a, b)).collect(),
            inter: repr.inter.into_iter().map(|[a, b]| (a, b)).collect(),
            two_way: repr.two_way,
            head,
        };
        spec.validate().map_err(D::Error::custom)?;
        Ok(spec)
    }
}

/// The supported countable graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CountableGraph {
    Strip(StripSpec),
    /// Vertices `ℕ`, edges `{n, n + 1}`.
    NaturalTree,
    /// Vertices `ℕ`, edges `{0, n}` for `n > 0`.
    NaturalWheel,
    /// The complete graph on `ℕ` without the edge `{0, 1}`.
    CompleteMinusEdge,
}

impl CountableGraph {
    /// The natural tree as a strip: one vertex per cell.
    pub fn natural_tree_strip() -> StripSpec {
        StripSpec::new(1, vec![], vec![(0, 0)], false).expect("valid fixture")
    }

    /// The strip on which colorings of this graph are counted, if any.
    pub fn as_strip(&self) -> Option<StripSpec> {
        match self {
            CountableGraph::Strip(s) => Some(s.clone()),
            CountableGraph::NaturalTree => Some(Self::natural_tree_strip()),
            _ => None,
        }
    }

    pub fn neighbors_below(&self, v: u64, bound: u64) -> Vec<u64> {
        match self {
            CountableGraph::Strip(s) => s.neighbors(v).into_iter().filter(|&w| w < bound).collect(),
            CountableGraph::NaturalTree => [v.checked_sub(1), Some(v + 1)]
                .into_iter()
                .flatten()
                .filter(|&w| w < bound)
                .collect(),
            CountableGraph::NaturalWheel => {
                if v == 0 {
                    (1..bound).collect()
                } else if bound > 0 {
                    vec![0]
                } else {
                    vec![]
                }
            }
            CountableGraph::CompleteMinusEdge => (0..bound).filter(|&w| self.adjacent(v, w)).collect(),
        }
    }

    /// Neighbors, when there are finitely many.
    pub fn finite_neighbors(&self, v: u64) -> Option<Vec<u64>> {
        match self {
            CountableGraph::Strip(s) => Some(s.neighbors(v)),
            CountableGraph::NaturalTree => Some(self.neighbors_below(v, v + 2)),
            CountableGraph::NaturalWheel if v > 0 => Some(vec![0]),
            _ => None,
        }
    }

    pub fn adjacent(&self, u: u64, v: u64) -> bool {
        if u == v {
            return false;
        }
        match self {
            CountableGraph::Strip(s) => s.adjacent(u, v),
            CountableGraph::NaturalTree => u.abs_diff(v) == 1,
            CountableGraph::NaturalWheel => u == 0 || v == 0,
            CountableGraph::CompleteMinusEdge => (u.min(v), u.max(v)) != (0, 1),
        }
    }

    /// The subgraph induced on the first `bound` enumerated vertices.
    pub fn prefix_graph(&self, bound: usize) -> FiniteGraph {
        if let CountableGraph::CompleteMinusEdge = self {
            return if bound >= 2 {
                complete_graph(bound).without_edge(0, 1)
            } else {
                FiniteGraph::edgeless(bound)
            };
        }
        let edges = (0..bound as u64).flat_map(|u| {
            self.neighbors_below(u, bound as u64)
                .into_iter()
                .filter(move |&w| w > u)
                .map(move |w| (u as usize, w as usize))
        });
        FiniteGraph::new(bound, edges).expect("prefix edges are in range")
    }

    /// Breadth-first distances from `source` to every target, exploring at
    /// most `node_cap` vertices. Needs finitely many neighbors everywhere
    /// except possibly at the wheel center, where the graph is handled in
    /// closed form.
    pub fn distances(&self, source: u64, targets: &[u64], node_cap: usize) -> Result<HashMap<u64, usize>> {
        match self {
            CountableGraph::NaturalWheel => {
                return Ok(targets
                    .iter()
                    .map(|&t| {
                        let d = match (source, t) {
                            (s, t) if s == t => 0,
                            (0, _) | (_, 0) => 1,
                            _ => 2,
                        };
                        (t, d)
                    })
                    .collect())
            }
            CountableGraph::CompleteMinusEdge => {
                return Ok(targets
                    .iter()
                    .map(|&t| {
                        let d = if t == source {
                            0
                        } else if self.adjacent(source, t) {
                            1
                        } else {
                            2
                        };
                        (t, d)
                    })
                    .collect())
            }
            _ => {}
        }
        let mut pending: Vec<u64> = targets.to_vec();
        pending.sort_unstable();
        pending.dedup();
        let mut found = HashMap::new();
        let mut dist: HashMap<u64, usize> = HashMap::from([(source, 0)]);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[&u];
            if pending.binary_search(&u).is_ok() {
                found.insert(u, du);
                if found.len() == pending.len() {
                    return Ok(found);
                }
            }
            for w in self.finite_neighbors(u).expect("finite degree") {
                if !dist.contains_key(&w) {
                    if dist.len() >= node_cap {
                        return Err(Error::Resource(format!(
                            "breadth-first search from {source} explored {node_cap} vertices without reaching every target"
                        )));
                    }
                    dist.insert(w, du + 1);
                    queue.push_back(w);
                }
            }
        }
        let missing = pending.iter().find(|t| !found.contains_key(t)).copied().unwrap_or(source);
        Err(Error::Domain(format!("vertex {missing} is not connected to {source}")))
    }

    /// Shortest path from `a` to `b`, both ends included.
    pub fn shortest_path(&self, a: u64, b: u64, node_cap: usize) -> Result<Vec<u64>> {
        if a == b {
            return Ok(vec![a]);
        }
        match self {
            CountableGraph::NaturalWheel => {
                return Ok(if a == 0 || b == 0 { vec![a, b] } else { vec![a, 0, b] });
            }
            CountableGraph::CompleteMinusEdge => {
                return Ok(if self.adjacent(a, b) { vec![a, b] } else { vec![a, 2, b] });
            }
            _ => {}
        }
        let mut parent: HashMap<u64, u64> = HashMap::from([(a, a)]);
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            for w in self.finite_neighbors(u).expect("finite degree") {
                if parent.contains_key(&w) {
                    continue;
                }
                parent.insert(w, u);
                if w == b {
                    let mut path = vec![b];
                    let mut cur = b;
                    while cur != a {
                        cur = parent[&cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Ok(path);
                }
                if parent.len() >= node_cap {
                    return Err(Error::Resource(format!("no path from {a} to {b} within {node_cap} explored vertices")));
                }
                queue.push_back(w);
            }
        }
        Err(Error::Domain(format!("vertex {b} is not connected to {a}")))
    }
}

impl fmt::Display for CountableGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountableGraph::Strip(s) => write!(
                f,
                "{} strip (cell {}, {} intra, {} inter edges)",
                if s.two_way { "two-way" } else { "one-way" },
                s.cell_size,
                s.intra.len(),
                s.inter.len()
            ),
            CountableGraph::NaturalTree => f.write_str("natural tree"),
            CountableGraph::NaturalWheel => f.write_str("natural wheel"),
            CountableGraph::CompleteMinusEdge => f.write_str("complete graph on ℕ minus an edge"),
        }
    }
}

pub const FIXTURE_NAMES: [&str; 6] = [
    "natural-tree",
    "natural-wheel",
    "fig3-g1",
    "fig3-g2",
    "fig3-g3",
    "integer-tree",
];

/// Bottom path `b_0 b_1 ...` with an apex `a_{t+1}` over every edge
/// `b_t b_{t+1}`. Cell `t` holds `b_t` (offset 0) and `a_{t+1}` (offset 1).
pub fn triangle_ladder(with_top_rail: bool) -> StripSpec {
    let mut inter = vec![(0, 0), (1, 0)];
    if with_top_rail {
        inter.push((1, 1));
    }
    StripSpec::new(2, vec![(0, 1)], inter, false).expect("valid fixture")
}

/// Two-way grid of height 4: columns are cells, rows are joined
/// horizontally, and every square gets the diagonal from row `r` to row
/// `r + 1` of the next column.
pub fn triangulated_grid() -> StripSpec {
    let intra = vec![(0, 1), (1, 2), (2, 3)];
    let mut inter: Vec<(usize, usize)> = (0..4).map(|r| (r, r)).collect();
    inter.extend((0..3).map(|r| (r, r + 1)));
    StripSpec::new(4, intra, inter, true).expect("valid fixture")
}

pub fn integer_tree() -> StripSpec {
    StripSpec::new(1, vec![], vec![(0, 0)], true).expect("valid fixture")
}

pub fn fixture(name: &str) -> Option<CountableGraph> {
    Some(match name {
        "natural-tree" => CountableGraph::NaturalTree,
        "natural-wheel" => CountableGraph::NaturalWheel,
        "fig3-g1" => CountableGraph::Strip(triangle_ladder(false)),
        "fig3-g2" => CountableGraph::Strip(triangle_ladder(true)),
        "fig3-g3" => CountableGraph::Strip(triangulated_grid()),
        "integer-tree" => CountableGraph::Strip(integer_tree()),
        _ => return None,
    })
}

/// The fixtures that are strips, with their names.
pub fn strip_fixtures() -> Vec<(&'static str, StripSpec)> {
    FIXTURE_NAMES
        .iter()
        .filter_map(|&name| fixture(name).and_then(|g| g.as_strip()).map(|s| (name, s)))
        .collect()
}
