//! Library side of the `chromafun` command-line tool.
//!
//! Every subcommand is a function returning a serializable report, so the
//! binary only parses arguments, renders the report and maps failures onto
//! exit codes.

pub mod cache;
pub mod commands;
pub mod config;
pub mod report;

use std::path::PathBuf;

use thiserror::Error;

pub use cache::{CacheLoad, PolyCache, CACHE_HEADER};
pub use commands::{
    cmd_cbs, cmd_chrompoly, cmd_corpus, cmd_equiv, cmd_natiso, cmd_strip, resolve_countable, Session,
};
pub use config::{OutputFormat, RunConfig, CACHE_ENV};
pub use report::{
    render, CbsReport, ChrompolyReport, CorpusClass, CorpusLineError, CorpusReport, EquivReport, NatisoReport,
    PrefixCheck, Report, StripReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] chromafun::Error),

    #[error("cannot access {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Malformed arguments or JSON input.
    #[error("invalid input: {0}")]
    Input(String),
}

impl CliError {
    /// 2 for unreadable or malformed input, 3 for exceeded limits, 4 for
    /// everything the library rejects on mathematical grounds.
    pub fn exit_code(&self) -> i32 {
        use chromafun::Error as E;
        match self {
            CliError::Core(E::Parse { .. }) | CliError::Io { .. } | CliError::Input(_) => EXIT_INPUT,
            CliError::Core(E::Resource(_)) => EXIT_RESOURCE,
            CliError::Core(_) => EXIT_PRECONDITION,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
