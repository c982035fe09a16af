//! `vbslab`: tables, reduced density matrices, verification, and timing
//! comparisons for the VBS chain, as CSV or JSON.
//!
//! Exit codes: 0 on success, 1 when verification fails, 2 on usage or
//! configuration errors.

mod bench;
mod config;
mod format;
mod rho;
mod table;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Overrides, OutputFormat, RunConfig};
use rho::RhoKind;
use table::TableKind;

#[derive(Parser)]
#[command(
    name = "vbslab",
    version,
    about = "Exact entanglement toolkit for the AKLT valence-bond-solid chain"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Cap on bulk sites for full-state construction (1..=10)
    #[arg(long = "n-max", global = true, value_name = "K")]
    n_max: Option<usize>,

    /// Cap on closed-form block length (1..=6)
    #[arg(long = "l-max", global = true, value_name = "K")]
    l_max: Option<usize>,

    /// Output encoding
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Write output to this file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Numeric tolerance for oracle cross-checks (structural identities
    /// keep their pinned tolerances)
    #[arg(long, global = true, value_name = "X")]
    tol: Option<f64>,

    /// key=value config file; flags take precedence over it
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a closed-form table (entropies, concurrence, or correlators)
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        /// Inclusive parameter interval, e.g. 1..6
        range: String,
    },
    /// Print a reduced density matrix with its spectrum and entropy
    Rho {
        #[arg(value_enum)]
        which: RhoKind,
        #[arg(default_value_t = 0)]
        param: usize,
    },
    /// Print only the spectrum and entropy of a reduced density matrix
    Spectrum {
        #[arg(value_enum)]
        which: RhoKind,
        #[arg(default_value_t = 0)]
        param: usize,
    },
    /// Run the verification suite and exit nonzero on any failure
    Verify,
    /// Time the closed forms against the brute-force oracle
    Bench {
        /// Inclusive chain-length interval, e.g. 2..6
        range: String,
    },
}

/// A rendered document, ready to write.
pub enum Rendered {
    Csv(String),
    Json(serde_json::Value),
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();

    let cfg = match RunConfig::resolve(
        Overrides {
            n_max: cli.n_max,
            l_max: cli.l_max,
            format: cli.format,
            out: cli.out.clone(),
            tolerance: cli.tol,
        },
        cli.config.as_deref(),
    ) {
        Ok(cfg) => cfg,
        Err(e) => return usage_error(&e),
    };

    let (rendered, exit) = match cli.command {
        Command::Table { kind, range } => match parse_and_run_table(kind, &range, &cfg) {
            Ok(r) => (r, ExitCode::SUCCESS),
            Err(e) => return usage_error(&e),
        },
        Command::Rho { which, param } => match rho::run(which, param, &cfg, true) {
            Ok(r) => (r, ExitCode::SUCCESS),
            Err(e) => return usage_error(&e),
        },
        Command::Spectrum { which, param } => match rho::run(which, param, &cfg, false) {
            Ok(r) => (r, ExitCode::SUCCESS),
            Err(e) => return usage_error(&e),
        },
        Command::Verify => {
            let checks = verify::run_checks(&cfg);
            let (rendered, passed) = verify::render(&checks, &cfg);
            let code = if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
            (rendered, code)
        }
        Command::Bench { range } => match parse_and_run_bench(&range, &cfg) {
            Ok(r) => (r, ExitCode::SUCCESS),
            Err(e) => return usage_error(&e),
        },
    };

    match emit(&cfg, rendered) {
        Ok(()) => exit,
        Err(e) => usage_error(&e),
    }
}

fn parse_and_run_table(kind: TableKind, range: &str, cfg: &RunConfig) -> Result<Rendered, String> {
    let (lo, hi) = config::parse_range(range)?;
    table::run(kind, lo, hi, cfg)
}

fn parse_and_run_bench(range: &str, cfg: &RunConfig) -> Result<Rendered, String> {
    let (lo, hi) = config::parse_range(range)?;
    bench::run(lo, hi, cfg)
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn emit(cfg: &RunConfig, rendered: Rendered) -> Result<(), String> {
    let text = match rendered {
        Rendered::Csv(s) => s,
        Rendered::Json(v) => {
            let mut s = serde_json::to_string_pretty(&v).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
    };
    match &cfg.out {
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| e.to_string())?;
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
    }
}

/// `VBSLAB_THREADS` bounds the internal thread pool; 0 or unset keeps the
/// library default.
fn init_thread_pool() {
    if let Ok(value) = std::env::var("VBSLAB_THREADS") {
        if let Ok(threads) = value.trim().parse::<usize>() {
            if threads > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}
