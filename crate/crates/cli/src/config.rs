use std::path::PathBuf;
use std::str::FromStr;

use chromafun::chromatic::DEFAULT_VERTEX_LIMIT;
use chromafun::functor::DEFAULT_COLORING_BUDGET;
use chromafun::infinite::DEFAULT_PROBE_BOUND;

use crate::{CliError, CliResult};

/// Environment variable naming the cache file; takes precedence over
/// `--cache`.
pub const CACHE_ENV: &str = "CHROMAFUN_CACHE";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Table,
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "table" => Ok(OutputFormat::Table),
            other => Err(CliError::Input(format!("unknown output format {other:?}, expected json or table"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Largest vertex count accepted for polynomials and partition enumeration.
    pub vertex_limit: usize,
    /// Largest coloring set (or transfer digraph) materialized.
    pub coloring_budget: usize,
    /// Vertex prefix on which infinite-graph witnesses are checked.
    pub probe_bound: usize,
    pub cache_path: Option<PathBuf>,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            vertex_limit: DEFAULT_VERTEX_LIMIT,
            coloring_budget: DEFAULT_COLORING_BUDGET,
            probe_bound: DEFAULT_PROBE_BOUND,
            cache_path: None,
            output_format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        for (name, value) in [
            ("--limit", self.vertex_limit),
            ("--budget", self.coloring_budget),
            ("--probe", self.probe_bound),
        ] {
            if value == 0 {
                return Err(CliError::Input(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    /// Applies the `CHROMAFUN_CACHE` override given its value, if set. An
    /// empty value disables the cache.
    pub fn with_cache_env(mut self, env: Option<String>) -> Self {
        if let Some(value) = env {
            self.cache_path = (!value.is_empty()).then(|| PathBuf::from(value));
        }
        self
    }
}
