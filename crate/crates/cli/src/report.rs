//! Report types printed by the subcommands. Each serializes to the JSON
//! schema documented in `docs/FORMATS.md` and reads back unchanged.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use chromafun::functor::NaturalityCertificate;
use chromafun::infinite::{ChromaticNumber, CountReport, Witness};
use chromafun::{IntPolynomial, StVector};
use serde::{Deserialize, Serialize};

use crate::OutputFormat;

pub trait Report: Serialize {
    fn table(&self) -> String;

    /// Process exit code for a report that was produced; nonzero only when
    /// the report itself records failures.
    fn exit_code(&self) -> i32 {
        crate::EXIT_OK
    }
}

pub fn render<R: Report>(report: &R, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
        OutputFormat::Table => report.table(),
    }
}

fn st_line(st: &StVector) -> String {
    st.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChrompolyReport {
    pub graph6: String,
    pub vertices: usize,
    pub edges: usize,
    pub polynomial: IntPolynomial,
    /// The polynomial written out, highest degree first.
    pub expression: String,
    pub stable_partitions: StVector,
    pub chromatic_number: Option<usize>,
}

impl Report for ChrompolyReport {
    fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph6            {}", self.graph6);
        let _ = writeln!(out, "vertices          {}", self.vertices);
        let _ = writeln!(out, "edges             {}", self.edges);
        let _ = writeln!(out, "χ(G, t)           {}", self.expression);
        let _ = writeln!(out, "#St_k             {}", st_line(&self.stable_partitions));
        if let Some(n) = self.chromatic_number {
            let _ = writeln!(out, "chromatic number  {n}");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivReport {
    pub graph6: [String; 2],
    pub equivalent: bool,
    pub stable_partitions: [StVector; 2],
    /// Smallest `k` with different `#St_k`, absent when equivalent.
    pub first_difference: Option<usize>,
}

impl Report for EquivReport {
    fn table(&self) -> String {
        let mut out = String::new();
        let verdict = if self.equivalent { "equivalent" } else { "not equivalent" };
        let _ = writeln!(out, "{} vs {}: {verdict}", self.graph6[0], self.graph6[1]);
        for (g, st) in self.graph6.iter().zip(&self.stable_partitions) {
            let _ = writeln!(out, "  #St_k({g}) = {}", st_line(st));
        }
        if let Some(k) = self.first_difference {
            let _ = writeln!(out, "  first difference at k = {k}");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NatisoReport {
    pub graph6: [String; 2],
    /// Block count `k` to pairs of indices into the two partition lists.
    pub matching: BTreeMap<usize, Vec<(usize, usize)>>,
    /// The stable partitions of each graph in enumeration order, as sorted
    /// lists of sorted blocks.
    pub partitions: [Vec<Vec<Vec<usize>>>; 2],
    pub certificate: NaturalityCertificate,
}

impl Report for NatisoReport {
    fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} ≅ {}", self.graph6[0], self.graph6[1]);
        for (k, pairs) in &self.matching {
            for &(i, j) in pairs {
                let _ = writeln!(
                    out,
                    "  k={k}  {:?} <-> {:?}",
                    self.partitions[0][i], self.partitions[1][j]
                );
            }
        }
        let c = &self.certificate;
        let _ = writeln!(
            out,
            "certificate up to [{}]: bijective={} natural={} injections={} squares={}",
            c.max_colors, c.bijective, c.natural, c.injections_checked, c.squares_checked
        );
        out
    }

    fn exit_code(&self) -> i32 {
        if self.certificate.passed() {
            crate::EXIT_OK
        } else {
            crate::EXIT_PRECONDITION
        }
    }
}

/// Colorings from a witness that were checked proper on the first `probe`
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixCheck {
    pub probe: usize,
    pub colorings_checked: usize,
    pub all_proper: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripReport {
    /// Fixture name, or `"json"` for an inline or file description.
    pub source: String,
    pub chromatic_number: ChromaticNumber,
    pub count: CountReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prefix_check: Option<PrefixCheck>,
}

impl Report for StripReport {
    fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph             {}", self.source);
        let _ = writeln!(out, "colors            {}", self.count.colors);
        let _ = writeln!(out, "#χ(G, [n])        {}", self.count.cardinality);
        let _ = writeln!(out, "chromatic number  {}", self.chromatic_number);
        if let Some(a) = &self.count.analysis {
            let _ = writeln!(out, "transfer digraph  {} states, {} arcs, {} live", a.states, a.arcs, a.live_states);
            match &a.witness {
                Witness::Enumerated { colorings, complete } => {
                    let _ = writeln!(out, "colorings{}", if *complete { "" } else { " (truncated)" });
                    for c in colorings {
                        let _ = writeln!(out, "  {}", serde_json::to_string(c).expect("serializes"));
                    }
                }
                Witness::Exit { cycle, exit_from, exit_to } => {
                    let _ = writeln!(out, "cycle {cycle:?} leaves via {exit_from:?} -> {exit_to:?}");
                }
                Witness::Branching {
                    state,
                    successors,
                    differ_at,
                    ..
                } => {
                    let _ = writeln!(
                        out,
                        "state {state:?} branches to {:?} and {:?} inside its component (cell {differ_at})",
                        successors[0], successors[1]
                    );
                }
            }
        }
        if let Some(note) = &self.count.closed_form {
            let _ = writeln!(out, "closed form       {note}");
        }
        if let Some(p) = &self.prefix_check {
            let _ = writeln!(
                out,
                "prefix check      {} colorings proper on {} vertices: {}",
                p.colorings_checked, p.probe, p.all_proper
            );
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusClass {
    pub stable_partitions: StVector,
    pub polynomial: IntPolynomial,
    pub size: usize,
    /// First member in input order.
    pub representative: String,
    pub members: Vec<String>,
    /// 1-based input line numbers of the members.
    pub lines: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusLineError {
    pub line: usize,
    pub input: String,
    pub exit_code: i32,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub graphs: usize,
    /// Ordered by the line of their first member.
    pub classes: Vec<CorpusClass>,
    pub errors: Vec<CorpusLineError>,
}

impl Report for CorpusReport {
    fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} graphs, {} classes, {} errors", self.graphs, self.classes.len(), self.errors.len());
        for c in &self.classes {
            let _ = writeln!(
                out,
                "  size {:>4}  rep {:<12} #St_k {}",
                c.size,
                c.representative,
                st_line(&c.stable_partitions)
            );
        }
        for e in &self.errors {
            let _ = writeln!(out, "  line {}: {}", e.line, e.message);
        }
        out
    }

    /// The code of the first failing line, so a corpus with only parse
    /// errors exits like a single bad graph would.
    fn exit_code(&self) -> i32 {
        self.errors.first().map_or(crate::EXIT_OK, |e| e.exit_code)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CbsReport {
    pub graph6: [String; 2],
    pub phi: Vec<usize>,
    pub psi: Vec<usize>,
    pub m: usize,
    pub n: usize,
    /// `|χ(g1, [m])|`, `|χ(g1, [n])|`, `|χ(g2, [m])|`, `|χ(g2, [n])|`.
    pub sizes: [usize; 4],
    /// `r_{[m]}` as (index in `χ(g1, [m])`, index in `χ(g2, [m])`).
    pub r_m: Vec<(usize, usize)>,
    pub r_n: Vec<(usize, usize)>,
    /// Indices of `χ(g1, [m])` and `χ(g1, [n])` in the C-sets.
    pub c_m: Vec<usize>,
    pub c_n: Vec<usize>,
}

impl Report for CbsReport {
    fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} -> {} via phi {:?}, psi {:?}", self.graph6[0], self.graph6[1], self.phi, self.psi);
        let _ = writeln!(
            out,
            "|χ(g1,[{m}])|={} |χ(g1,[{n}])|={} |χ(g2,[{m}])|={} |χ(g2,[{n}])|={}",
            self.sizes[0],
            self.sizes[1],
            self.sizes[2],
            self.sizes[3],
            m = self.m,
            n = self.n
        );
        let _ = writeln!(out, "r_[{}] {:?}", self.m, self.r_m);
        let _ = writeln!(out, "r_[{}] {:?}", self.n, self.r_n);
        let _ = writeln!(out, "C at [{}] {:?}, at [{}] {:?}", self.m, self.c_m, self.n, self.c_n);
        out
    }
}
