//! `galois-fiber`: JSON reports for catalog, model, zeta, sieve, search,
//! descent, entanglement and census workflows.

mod commands;
mod jmaps;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Parser, Debug)]
#[command(name = "galois-fiber", version, about = "Composite-level modular curves over Q")]
pub struct Cli {
    /// Worker threads for per-prime and per-subgroup fan-out.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// File of `NAME = j(t)` lines usable wherever a catalog reference is.
    #[arg(long, global = true)]
    jmap_file: Option<PathBuf>,
    /// Add wall-clock time to the report (makes output non-deterministic).
    #[arg(long, global = true)]
    timing: bool,
    /// Pretty-print the JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Subgroup catalog at one level.
    Catalog {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        name: Option<String>,
        /// Also check the lattice edges.
        #[arg(long)]
        lattice: bool,
    },
    /// Fibered product of two j-maps and its hyperelliptic model, or a registry model.
    Model {
        #[arg(long, required_unless_present = "registry")]
        left: Option<String>,
        #[arg(long, required_unless_present = "registry")]
        right: Option<String>,
        #[arg(long, conflicts_with_all = ["left", "right"])]
        registry: Option<String>,
    },
    /// Point counts and zeta numerator of y^2 = f(x) over F_p.
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long)]
        prime: u64,
        /// Also factor the Frobenius characteristic polynomial.
        #[arg(long)]
        charpoly: bool,
    },
    /// Rank-0 Mordell-Weil sieve against one rational point.
    Sieve {
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        /// Torsion bound; computed from odd primes up to --torsion-below when absent.
        #[arg(long)]
        bound: Option<u128>,
        #[arg(long, default_value_t = 200)]
        torsion_below: u64,
        /// Base point: `inf` or `x,y` with rational coordinates.
        #[arg(long, default_value = "inf")]
        base: String,
    },
    /// Rational points of bounded height.
    Search {
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long, default_value_t = 100)]
        height: u64,
    },
    /// Twists of an unramified double cover with local solubility per place.
    Descent {
        #[arg(long, allow_hyphen_values = true)]
        curve: Option<String>,
        /// `f1;f2` with curve = f1 f2.
        #[arg(long, allow_hyphen_values = true)]
        factors: String,
        #[arg(long, value_delimiter = ',', required = true)]
        bad_primes: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "real,2,3,5,7")]
        places: Vec<String>,
    },
    /// Goursat filter for a pair of catalog groups.
    Entangle {
        /// `A,B`, e.g. `2:G_3,5:G_9`.
        #[arg(long)]
        pair: String,
    },
    /// Gauss period cubic, its curve and the Rubin-Silverberg family at p.
    Gauss {
        #[arg(long)]
        prime: u64,
        #[arg(long, value_delimiter = ',', default_value = "0,1", allow_hyphen_values = true)]
        t: Vec<String>,
    },
    /// Brau-Jones j-family, or the level-6 cover over a level-3 parameter.
    Braujones {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// Treat t as the level-3 parameter and solve for rational s.
        #[arg(long)]
        level6: bool,
    },
    /// Genera of all composites of one group with a level.
    Census {
        #[arg(long)]
        pair_left: String,
        #[arg(long)]
        level: u32,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Exact(#[from] galois_fiber::exact::ExactError),
    #[error(transparent)]
    Group(#[from] galois_fiber::gl2cat::GroupError),
    #[error(transparent)]
    Model(#[from] galois_fiber::models::ModelError),
    #[error(transparent)]
    Ff(#[from] galois_fiber::ffcurves::FfError),
    #[error(transparent)]
    Rat(#[from] galois_fiber::ratpoints::RatError),
    #[error(transparent)]
    Sieve(#[from] galois_fiber::sieve::SieveError),
    #[error(transparent)]
    Entangle(#[from] galois_fiber::entangle::EntangleError),
    #[error("{path}: {msg}")]
    JMapFile { path: String, msg: String },
}

/// Exit status carried by a successful run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Done,
    Inconclusive,
}

pub struct Output {
    pub inputs: Value,
    pub tag: &'static str,
    pub result: Value,
    pub outcome: Outcome,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Catalog { .. } => "catalog",
        Command::Model { .. } => "model",
        Command::Zeta { .. } => "zeta",
        Command::Sieve { .. } => "sieve",
        Command::Search { .. } => "search",
        Command::Descent { .. } => "descent",
        Command::Entangle { .. } => "entangle",
        Command::Gauss { .. } => "gauss",
        Command::Braujones { .. } => "braujones",
        Command::Census { .. } => "census",
    }
}

fn configure_threads(n: Option<usize>) {
    let Some(n) = n else { return };
    #[cfg(feature = "parallel")]
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
        log::warn!("could not size the thread pool: {e}");
    }
    #[cfg(not(feature = "parallel"))]
    log::warn!("--threads {n} ignored: built without the parallel feature");
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    configure_threads(cli.threads);
    let start = Instant::now();
    let user_maps = match cli.jmap_file.as_deref().map(jmaps::load).transpose() {
        Ok(m) => m.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match commands::run(&cli.command, &user_maps) {
        Ok(out) => {
            let mut report = json!({
                "schema": 1,
                "command": command_name(&cli.command),
                "inputs": out.inputs,
                "tag": out.tag,
                "result": out.result,
            });
            if cli.timing {
                report["elapsed_ms"] = json!(start.elapsed().as_millis().to_string());
            }
            let text = if cli.pretty { serde_json::to_string_pretty(&report) } else { serde_json::to_string(&report) };
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = writeln!(stdout, "{}", text.expect("reports serialize")) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            }
            match out.outcome {
                Outcome::Done => ExitCode::SUCCESS,
                Outcome::Inconclusive => ExitCode::from(2),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
