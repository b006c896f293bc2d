use std::collections::HashMap;
use std::path::Path;

use chromafun::cbs::chromatic_cbs;
use chromafun::chromatic::chromatic_polynomial_with_limit;
use chromafun::functor::{build_natural_bijection, certify_natural_isomorphism};
use chromafun::infinite::{
    analyze_colorings, chromatic_number_countable, fixture, is_proper_on_prefix, CountableGraph, PeriodicColoring,
    StripSpec, Witness, FIXTURE_NAMES,
};
use chromafun::{emit_graph6, evaluate, parse_graph6, to_falling_factorial, FiniteGraph, GraphHom, Injection, IntPolynomial};
use num_traits::Zero;
use rayon::prelude::*;

use crate::report::{
    CbsReport, ChrompolyReport, CorpusClass, CorpusLineError, CorpusReport, EquivReport, NatisoReport, PrefixCheck,
    StripReport,
};
use crate::{CliError, CliResult, PolyCache, RunConfig};

/// A validated configuration together with the opened cache, if any.
#[derive(Debug)]
pub struct Session {
    pub config: RunConfig,
    cache: Option<PolyCache>,
}

impl Session {
    pub fn new(config: RunConfig) -> CliResult<Self> {
        config.validate()?;
        let cache = config.cache_path.as_ref().map(PolyCache::open).transpose()?;
        Ok(Session { config, cache })
    }

    pub fn cache(&self) -> Option<&PolyCache> {
        self.cache.as_ref()
    }

    pub fn polynomial(&self, g: &FiniteGraph) -> CliResult<IntPolynomial> {
        match &self.cache {
            Some(cache) => cache.polynomial(g, self.config.vertex_limit),
            None => Ok(chromatic_polynomial_with_limit(g, self.config.vertex_limit)?),
        }
    }
}

fn graph(text: &str) -> CliResult<FiniteGraph> {
    Ok(parse_graph6(text.trim())?)
}

pub fn cmd_chrompoly(session: &Session, graph6: &str) -> CliResult<ChrompolyReport> {
    let g = graph(graph6)?;
    let p = session.polynomial(&g)?;
    let st = to_falling_factorial(&p)?;
    let chromatic_number = (1..=g.vertex_count()).find(|&n| !evaluate(&p, n as i64).is_zero());
    Ok(ChrompolyReport {
        graph6: emit_graph6(&g),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        expression: p.to_string(),
        polynomial: p,
        stable_partitions: st,
        chromatic_number,
    })
}

pub fn cmd_equiv(session: &Session, a: &str, b: &str) -> CliResult<EquivReport> {
    let (g1, g2) = (graph(a)?, graph(b)?);
    let st1 = to_falling_factorial(&session.polynomial(&g1)?)?;
    let st2 = to_falling_factorial(&session.polynomial(&g2)?)?;
    let first_difference = st1.first_difference(&st2);
    Ok(EquivReport {
        graph6: [emit_graph6(&g1), emit_graph6(&g2)],
        equivalent: first_difference.is_none(),
        stable_partitions: [st1, st2],
        first_difference,
    })
}

/// Builds the partition-matching bijection and certifies it on every level
/// up to `max_colors`. Non-equivalent graphs fail with a domain error.
pub fn cmd_natiso(session: &Session, a: &str, b: &str, max_colors: usize) -> CliResult<NatisoReport> {
    let (g1, g2) = (graph(a)?, graph(b)?);
    let r = build_natural_bijection(&g1, &g2, session.config.vertex_limit)?;
    let certificate = certify_natural_isomorphism(&r, max_colors, session.config.coloring_budget)?;
    let (st1, st2) = r.partitions();
    let blocks = |st: &[chromafun::partitions::StablePartition]| st.iter().map(|p| p.blocks()).collect();
    Ok(NatisoReport {
        graph6: [emit_graph6(&g1), emit_graph6(&g2)],
        matching: r.matching().clone(),
        partitions: [blocks(st1), blocks(st2)],
        certificate,
    })
}

/// A fixture name, an inline JSON strip description, or the path of a file
/// holding one.
pub fn resolve_countable(source: &str) -> CliResult<(String, CountableGraph)> {
    if let Some(g) = fixture(source) {
        return Ok((source.to_string(), g));
    }
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else if Path::new(source).is_file() {
        std::fs::read_to_string(source).map_err(|e| CliError::Io {
            path: source.into(),
            source: e,
        })?
    } else {
        return Err(CliError::Input(format!(
            "{source:?} is neither a fixture ({}) nor a strip description",
            FIXTURE_NAMES.join(", ")
        )));
    };
    let spec: StripSpec =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("strip description: {e}")))?;
    Ok(("json".to_string(), CountableGraph::Strip(spec)))
}

fn witness_colorings(w: &Witness) -> Vec<&PeriodicColoring> {
    match w {
        Witness::Enumerated { colorings, .. } => colorings.iter().collect(),
        Witness::Branching { colorings, .. } => colorings.iter().collect(),
        Witness::Exit { .. } => Vec::new(),
    }
}

pub fn cmd_strip(session: &Session, source: &str, n: usize) -> CliResult<StripReport> {
    let (label, g) = resolve_countable(source)?;
    let count = analyze_colorings(&g, n, session.config.coloring_budget)?;
    let chromatic_number = chromatic_number_countable(&g)?;
    let prefix_check = match (g.as_strip(), &count.analysis) {
        (Some(spec), Some(analysis)) => {
            let colorings = witness_colorings(&analysis.witness);
            let probe = session.config.probe_bound;
            let all_proper = colorings
                .iter()
                .all(|c| is_proper_on_prefix(&g, &|v| c.color_of(&spec, v), probe));
            (!colorings.is_empty()).then_some(PrefixCheck {
                probe,
                colorings_checked: colorings.len(),
                all_proper,
            })
        }
        _ => None,
    };
    Ok(StripReport {
        source: label,
        chromatic_number,
        count,
        prefix_check,
    })
}

/// Groups the graphs of a file (one graph6 per line, blank lines ignored)
/// by their stable partition counts. Lines are processed in parallel; bad
/// lines are reported, not fatal.
pub fn cmd_corpus(session: &Session, path: &Path) -> CliResult<CorpusReport> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let results: Vec<_> = lines
        .par_iter()
        .map(|&(_, l)| -> CliResult<_> {
            let g = graph(l)?;
            let p = session.polynomial(&g)?;
            let st = to_falling_factorial(&p)?;
            Ok((emit_graph6(&g), p, st))
        })
        .collect();

    let mut classes: Vec<CorpusClass> = Vec::new();
    let mut index = HashMap::new();
    let mut errors = Vec::new();
    let mut graphs = 0;
    for (&(line, input), result) in lines.iter().zip(results) {
        match result {
            Ok((g6, p, st)) => {
                graphs += 1;
                let i = *index.entry(st.clone()).or_insert_with(|| {
                    classes.push(CorpusClass {
                        stable_partitions: st,
                        polynomial: p,
                        size: 0,
                        representative: g6.clone(),
                        members: Vec::new(),
                        lines: Vec::new(),
                    });
                    classes.len() - 1
                });
                let class = &mut classes[i];
                class.size += 1;
                class.members.push(g6);
                class.lines.push(line);
            }
            Err(e) => errors.push(CorpusLineError {
                line,
                input: input.to_string(),
                exit_code: e.exit_code(),
                message: e.to_string(),
            }),
        }
    }
    Ok(CorpusReport { graphs, classes, errors })
}

/// Runs the relative construction on `χ(g1, ·)`, `χ(g2, ·)` for the
/// surjections `phi : g1 -> g2`, `psi : g2 -> g1` and the inclusion
/// `[m] -> [n]`.
pub fn cmd_cbs(session: &Session, a: &str, b: &str, phi: &[usize], psi: &[usize], m: usize, n: usize) -> CliResult<CbsReport> {
    let (g1, g2) = (graph(a)?, graph(b)?);
    if m > n {
        return Err(CliError::Input(format!("m = {m} exceeds n = {n}")));
    }
    let phi_hom = GraphHom::checked(g1.clone(), g2.clone(), phi.to_vec())?;
    let psi_hom = GraphHom::checked(g2.clone(), g1.clone(), psi.to_vec())?;
    let f = Injection::inclusion(m, n)?;
    let run = chromatic_cbs(&g1, &g2, &phi_hom, &psi_hom, &f, session.config.coloring_budget)?;
    Ok(CbsReport {
        graph6: [emit_graph6(&g1), emit_graph6(&g2)],
        phi: phi.to_vec(),
        psi: psi.to_vec(),
        m,
        n,
        sizes: [run.x1.len(), run.x2.len(), run.y1.len(), run.y2.len()],
        r_m: run.pairs_small(),
        r_n: run.pairs_large(),
        c_m: run.result.c1(),
        c_n: run.result.c2(),
    })
}
