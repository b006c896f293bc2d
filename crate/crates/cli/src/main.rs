use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use chromafun_cli::{
    cmd_cbs, cmd_chrompoly, cmd_corpus, cmd_equiv, cmd_natiso, cmd_strip, render, CliError, CliResult, OutputFormat,
    Report, RunConfig, Session, CACHE_ENV,
};

#[derive(Parser, Debug)]
#[command(name = "chromafun", version, about = "Chromatic polynomials, stable partitions and coloring functors")]
struct Cli {
    /// Largest vertex count for polynomials and partition enumeration.
    #[arg(long, global = true, default_value_t = RunConfig::default().vertex_limit)]
    limit: usize,

    /// Largest coloring set or transfer digraph materialized.
    #[arg(long, global = true, default_value_t = RunConfig::default().coloring_budget)]
    budget: usize,

    /// Number of leading vertices on which infinite witnesses are checked.
    #[arg(long, global = true, default_value_t = RunConfig::default().probe_bound)]
    probe: usize,

    /// Polynomial cache file. CHROMAFUN_CACHE takes precedence.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// json or table.
    #[arg(long, global = true, default_value = "json")]
    format: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Chromatic polynomial and stable partition counts of a graph6 graph.
    Chrompoly { graph6: String },
    /// Decide chromatic equivalence of two graphs.
    Equiv { g1: String, g2: String },
    /// Build and certify a natural bijection between the coloring functors.
    Natiso {
        g1: String,
        g2: String,
        #[arg(long, default_value_t = 4)]
        max_colors: usize,
    },
    /// Cardinality of the n-colorings of a strip fixture or JSON strip.
    Strip { source: String, n: usize },
    /// Group a file of graph6 lines into chromatic equivalence classes.
    Corpus { file: PathBuf },
    /// Relative Cantor–Bernstein–Schröder bijections between coloring sets.
    Cbs {
        g1: String,
        g2: String,
        /// Surjective homomorphism g1 -> g2 as comma-separated images.
        #[arg(long, value_delimiter = ',')]
        phi: Vec<usize>,
        /// Surjective homomorphism g2 -> g1 as comma-separated images.
        #[arg(long, value_delimiter = ',')]
        psi: Vec<usize>,
        m: usize,
        n: usize,
    },
}

fn emit<R: Report>(report: R, format: OutputFormat) -> i32 {
    print!("{}", render(&report, format));
    report.exit_code()
}

fn run(cli: Cli) -> CliResult<i32> {
    let format: OutputFormat = cli.format.parse()?;
    let config = RunConfig {
        vertex_limit: cli.limit,
        coloring_budget: cli.budget,
        probe_bound: cli.probe,
        cache_path: cli.cache,
        output_format: format,
    }
    .with_cache_env(std::env::var(CACHE_ENV).ok());
    let s = Session::new(config)?;
    Ok(match cli.command {
        Command::Chrompoly { graph6 } => emit(cmd_chrompoly(&s, &graph6)?, format),
        Command::Equiv { g1, g2 } => emit(cmd_equiv(&s, &g1, &g2)?, format),
        Command::Natiso { g1, g2, max_colors } => emit(cmd_natiso(&s, &g1, &g2, max_colors)?, format),
        Command::Strip { source, n } => emit(cmd_strip(&s, &source, n)?, format),
        Command::Corpus { file } => emit(cmd_corpus(&s, &file)?, format),
        Command::Cbs { g1, g2, phi, psi, m, n } => emit(cmd_cbs(&s, &g1, &g2, &phi, &psi, m, n)?, format),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("chromafun: {e}");
            report_code(&e)
        }
    }
}

fn report_code(e: &CliError) -> ExitCode {
    ExitCode::from(e.exit_code() as u8)
}
