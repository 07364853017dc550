//! Command-line interface.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use segre_core::engine::{classify_weight, degree_bound, multiplication_table, segre_syzygies, sheaf_syzygies};
use segre_core::koszul::OracleError;
use segre_core::rank::RankMode;

use crate::errata::{errata_report, load_fixture};
use crate::oracle::{boundary_banner, verify, Cache, MemoLr, RunError, VerifyOptions};
use crate::render::{partition_label, render, signed, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "segre", version, about = "Equivariant syzygies of Segre embeddings")]
pub struct Cli {
    /// Print the differences between the published tables and the computed ones.
    #[arg(long, global = true)]
    pub show_errata: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Args)]
pub struct Space {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub a: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub b: i64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti table and minimal resolution.
    Betti {
        #[command(flatten)]
        space: Space,
        /// Largest internal degree (default: past the last nonzero entry).
        #[arg(long)]
        max_t: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Components of one syzygy space.
    Components {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        t: usize,
    },
    /// Recompute every strand with the Koszul complex and compare.
    Verify {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        max_t: usize,
        /// Exact rational ranks alongside the modular ones.
        #[arg(long)]
        exact: bool,
        /// Worker threads (default: available parallelism).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        no_cache: bool,
        /// Recompute cached strands and require identical cache files.
        #[arg(long)]
        recheck: bool,
    },
    /// Nonzero products between syzygy components (no twist).
    Mult {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Inspect or clear the oracle cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum CacheAction {
    Clear,
    Stats,
}

fn check_space(m: usize, n: usize, a: i64, b: i64) -> Result<(), String> {
    if m == 0 || n == 0 {
        return Err(format!("m and n must be positive (got m = {m}, n = {n})"));
    }
    if a < -(m as i64) || b < -(n as i64) {
        return Err(format!(
            "twist out of range: need a ≥ −{m} and b ≥ −{n} (got a = {}, b = {})",
            signed(a),
            signed(b)
        ));
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            }
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let lr = MemoLr::new();
    if cli.show_errata {
        write!(out, "{}", errata_report(&load_fixture(), &lr))?;
        if cli.command.is_none() {
            return Ok(EXIT_OK);
        }
    }
    let Some(command) = &cli.command else {
        return Err(Failure::Usage("no command given (try --help)".into()));
    };
    match command {
        Command::Betti { space, max_t, format } => {
            let Space { m, n, a, b } = *space;
            check_space(m, n, a, b).map_err(Failure::Usage)?;
            if let Some(banner) = boundary_banner(m, n, a, b) {
                writeln!(err, "{banner}")?;
            }
            let max_t = max_t.unwrap_or_else(|| degree_bound(m, n, a, b));
            let table = if a == 0 && b == 0 {
                segre_syzygies(m, n).map(|t| t.truncated(max_t))
            } else {
                sheaf_syzygies(m, n, a, b, max_t)
            }
            .map_err(|e| Failure::Usage(e.to_string()))?;
            write!(out, "{}", render(&table, *format))?;
            Ok(EXIT_OK)
        }
        Command::Components { space, p, t } => {
            let Space { m, n, a, b } = *space;
            check_space(m, n, a, b).map_err(Failure::Usage)?;
            let table = sheaf_syzygies(m, n, a, b, *t).map_err(|e| Failure::Usage(e.to_string()))?;
            let comps = table.components(*p, *t);
            if comps.is_empty() {
                writeln!(out, "R_{{{p},{t}}} = 0")?;
            }
            for c in comps {
                writeln!(
                    out,
                    "Σ{} ⊗ Σ{}  mult {}  dim {}  core {}  {:?}",
                    partition_label(&c.omega.lambda),
                    partition_label(&c.omega.mu),
                    c.multiplicity,
                    c.dim,
                    partition_label(&c.core()),
                    classify_weight(&c.omega, a, b, m, n)
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            space,
            max_t,
            exact,
            jobs,
            no_cache,
            recheck,
        } => {
            let Space { m, n, a, b } = *space;
            check_space(m, n, a, b).map_err(Failure::Usage)?;
            if let Some(banner) = boundary_banner(m, n, a, b) {
                writeln!(err, "{banner}")?;
            }
            let opts = VerifyOptions {
                mode: if *exact { RankMode::Exact } else { RankMode::Modular },
                jobs: *jobs,
                cache: (!no_cache).then(Cache::from_env),
                recheck: *recheck,
                ..VerifyOptions::default()
            };
            let outcome = match verify(m, n, a, b, *max_t, &opts) {
                Ok(o) => o,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    let broken = matches!(e, RunError::Oracle(OracleError::Rank(_) | OracleError::Character(_)));
                    return Ok(if broken { EXIT_MISMATCH } else { EXIT_USAGE });
                }
            };
            for (s, report) in outcome.comparison.strands.iter().zip(&outcome.reports) {
                let spec = report.spec;
                if spec.term_dims().iter().all(|&d| d == 0) {
                    writeln!(out, "t = {}  empty", s.t)?;
                    continue;
                }
                let nonzero: Vec<String> = s
                    .oracle
                    .iter()
                    .enumerate()
                    .filter(|(_, &d)| d > 0)
                    .map(|(p, d)| format!("H_{p} = {d}"))
                    .collect();
                let dims = if nonzero.is_empty() { "acyclic".to_string() } else { nonzero.join(", ") };
                let status = if s.matches() { "MATCH" } else { "MISMATCH" };
                writeln!(out, "t = {}  {status}  {dims}", s.t)?;
                for mm in &s.mismatches {
                    writeln!(
                        out,
                        "    p = {}: {:?} differs (closed form {}, oracle {})",
                        mm.p, mm.kind, mm.expected, mm.found
                    )?;
                }
            }
            for t in &outcome.stale {
                writeln!(out, "t = {t}  cache entry differs from recomputation")?;
            }
            if outcome.is_match() {
                writeln!(out, "all {} strands match", outcome.comparison.strands.len())?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "verification failed")?;
                Ok(EXIT_MISMATCH)
            }
        }
        Command::Mult { m, n } => {
            check_space(*m, *n, 0, 0).map_err(Failure::Usage)?;
            let triples = multiplication_table(*m, *n, &lr).map_err(|e| Failure::Usage(e.to_string()))?;
            if triples.is_empty() {
                writeln!(out, "zero multiplication")?;
            }
            for tr in &triples {
                let [x, y, z] = tr.bidegrees();
                writeln!(
                    out,
                    "R_{{{},{}}} × R_{{{},{}}} → R_{{{},{}}}  {} · {} → {}",
                    x.0,
                    x.1,
                    y.0,
                    y.1,
                    z.0,
                    z.1,
                    partition_label(&tr.left.core()),
                    partition_label(&tr.right.core()),
                    partition_label(&tr.product.core())
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Cache { action } => {
            let cache = Cache::from_env();
            let result = match action {
                CacheAction::Clear => cache.clear().map(|k| format!("removed {k} entries from {}", cache.root.display())),
                CacheAction::Stats => cache
                    .stats()
                    .map(|(k, bytes)| format!("{}: {k} entries, {bytes} bytes", cache.root.display())),
            };
            match result {
                Ok(line) => {
                    writeln!(out, "{line}")?;
                    Ok(EXIT_OK)
                }
                Err(e) => Err(Failure::Usage(e.to_string())),
            }
        }
    }
}
