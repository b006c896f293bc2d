//! Persistent memo of chromatic polynomials.
//!
//! The file is an append-only log: a version line, then one
//! `graph6 <TAB> {"coeffs":[...]}` line per graph. Loading keeps the longest
//! valid prefix and truncates the rest, so a write cut short by a crash
//! costs one entry at most. A different version line discards the file.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use chromafun::chromatic::{chromatic_polynomial_with_limit, has_chromatic_shape};
use chromafun::{emit_graph6, parse_graph6, Error, FiniteGraph, IntPolynomial};

use crate::{CliError, CliResult};

pub const CACHE_HEADER: &str = "chromafun-cache v1";

/// What happened while loading the log.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CacheLoad {
    pub entries: usize,
    /// Bytes cut from a corrupt or incomplete tail.
    pub truncated_bytes: u64,
    /// The file had another version line (or none) and was started afresh.
    pub invalidated: bool,
}

#[derive(Debug)]
pub struct PolyCache {
    path: PathBuf,
    entries: Mutex<HashMap<String, IntPolynomial>>,
    log: Mutex<File>,
    load: CacheLoad,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn parse_entry(line: &str) -> Option<(String, IntPolynomial)> {
    let (g6, coeffs) = line.split_once('\t')?;
    let g = parse_graph6(g6).ok()?;
    let p: IntPolynomial = serde_json::from_str(coeffs).ok()?;
    has_chromatic_shape(&p, g.vertex_count()).then(|| (emit_graph6(&g), p))
}

struct Parsed {
    entries: HashMap<String, IntPolynomial>,
    valid_len: usize,
    header_ok: bool,
}

fn parse_log(bytes: &[u8]) -> Parsed {
    let header = format!("{CACHE_HEADER}\n");
    if !bytes.starts_with(header.as_bytes()) {
        return Parsed {
            entries: HashMap::new(),
            valid_len: 0,
            header_ok: false,
        };
    }
    let mut entries = HashMap::new();
    let mut pos = header.len();
    while let Some(end) = bytes[pos..].iter().position(|&b| b == b'\n') {
        let entry = std::str::from_utf8(&bytes[pos..pos + end]).ok().and_then(parse_entry);
        let Some((key, p)) = entry else { break };
        entries.insert(key, p);
        pos += end + 1;
    }
    Parsed {
        entries,
        valid_len: pos,
        header_ok: true,
    }
}

impl PolyCache {
    /// Opens (creating if needed) the log at `path` and repairs it.
    pub fn open(path: impl AsRef<Path>) -> CliResult<Self> {
        let path = path.as_ref();
        let bytes = match std::fs::read(path) {
            Ok(b) => b,
            Err(e) if e.kind() == ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(io_err(path)(e)),
        };
        let parsed = parse_log(&bytes);
        let mut load = CacheLoad {
            entries: parsed.entries.len(),
            ..CacheLoad::default()
        };
        let file = OpenOptions::new()
            .create(true)
            .truncate(false)
            .read(true)
            .write(true)
            .open(path)
            .map_err(io_err(path))?;
        if !parsed.header_ok {
            load.invalidated = !bytes.is_empty();
            file.set_len(0).map_err(io_err(path))?;
            let mut f = &file;
            writeln!(f, "{CACHE_HEADER}").map_err(io_err(path))?;
        } else if parsed.valid_len < bytes.len() {
            load.truncated_bytes = (bytes.len() - parsed.valid_len) as u64;
            file.set_len(parsed.valid_len as u64).map_err(io_err(path))?;
        }
        let log = OpenOptions::new().append(true).open(path).map_err(io_err(path))?;
        Ok(PolyCache {
            path: path.to_path_buf(),
            entries: Mutex::new(parsed.entries),
            log: Mutex::new(log),
            load,
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn load_outcome(&self) -> &CacheLoad {
        &self.load
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    /// The chromatic polynomial of `g`, from the log when present. The
    /// vertex limit is enforced before the lookup so that a warm cache never
    /// changes which inputs are rejected.
    pub fn polynomial(&self, g: &FiniteGraph, vertex_limit: usize) -> CliResult<IntPolynomial> {
        if g.vertex_count() > vertex_limit {
            return Err(Error::Resource(format!(
                "{} vertices exceed the chromatic polynomial limit of {vertex_limit}",
                g.vertex_count()
            ))
            .into());
        }
        let key = emit_graph6(g);
        if let Some(p) = self.entries.lock().expect("cache lock").get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(p.clone());
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let p = chromatic_polynomial_with_limit(g, vertex_limit)?;
        let coeffs = serde_json::to_string(&p).expect("polynomials serialize");
        {
            let mut entries = self.entries.lock().expect("cache lock");
            if entries.insert(key.clone(), p.clone()).is_none() {
                // One write per line keeps concurrent appends from interleaving.
                let mut log = self.log.lock().expect("cache lock");
                log.write_all(format!("{key}\t{coeffs}\n").as_bytes())
                    .and_then(|()| log.flush())
                    .map_err(io_err(&self.path))?;
            }
        }
        Ok(p)
    }
}
