//! `bmforge`: affine distances, John-position certificates and scenario
//! replays for convex polygons.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use bmforge_core::generate::PolygonClass;
use bmforge_core::Tolerances;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bmforge", version, about)]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Geometric tolerance for contact detection.
    #[arg(long, global = true, default_value_t = bmforge_core::tolerance::TAU_GEOM)]
    pub tol: f64,
    /// Tolerance for certificate and witness verification.
    #[arg(long = "cert-tol", global = true, default_value_t = bmforge_core::tolerance::TAU_CERT)]
    pub cert_tol: f64,
    /// Base seed; the BMFORGE_SEED environment variable takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Local searches per sign branch.
    #[arg(long, global = true, default_value_t = 64)]
    pub restarts: usize,
    /// Objective evaluations per local search.
    #[arg(long = "max-iters", global = true, default_value_t = 2000)]
    pub max_iters: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also write an SVG, to PATH if given.
    #[arg(long, global = true, num_args = 0..=1, require_equals = true, default_missing_value = "")]
    pub render: Option<String>,
}

impl RunConfig {
    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            geom: self.tol,
            cert: self.cert_tol,
        }
    }

    /// `--seed`, overridden by `BMFORGE_SEED` when that parses.
    pub fn effective_seed(&self) -> Result<u64, String> {
        match std::env::var("BMFORGE_SEED") {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| format!("BMFORGE_SEED is not an integer: {s:?}")),
            Err(_) => Ok(self.seed),
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Banach–Mazur (or Grünbaum) distance between polygon files, taken in
    /// pairs: K1 L1 [K2 L2 ...].
    Distance {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        /// Allow negative homothets.
        #[arg(long)]
        grunbaum: bool,
        /// Skip the maximal-volume start.
        #[arg(long = "no-maxvol")]
        no_maxvol: bool,
    },
    /// John position of K in L with a contact-pair certificate.
    John {
        k: PathBuf,
        l: PathBuf,
        /// Certify the given position as is, without the maximal-volume step.
        #[arg(long = "no-maxvol")]
        no_maxvol: bool,
    },
    /// Replay scenario files.
    Replay {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Seeded search for pairs near Grünbaum distance 2.
    Search {
        #[arg(long, default_value_t = 100)]
        budget: usize,
        /// Class pairs as K:L, e.g. symmetric:symmetric. Repeatable.
        #[arg(long = "pair", value_parser = parse_pair)]
        pairs: Vec<(PolygonClass, PolygonClass)>,
        /// Number of candidates to print.
        #[arg(long, default_value_t = 10)]
        top: usize,
    },
    /// Render a distance, John or scenario report as SVG.
    Render {
        report: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn parse_pair(s: &str) -> Result<(PolygonClass, PolygonClass), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected K:L, got {s:?}"))?;
    let class = |c: &str| {
        serde_json::from_value::<PolygonClass>(serde_json::Value::String(c.to_string()))
            .map_err(|_| format!("unknown polygon class {c:?}"))
    };
    Ok((class(a)?, class(b)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Distance {
            files,
            grunbaum,
            no_maxvol,
        } => commands::distance(&cli.run, &files, grunbaum, no_maxvol),
        Command::John { k, l, no_maxvol } => commands::john(&cli.run, &k, &l, no_maxvol),
        Command::Replay { files } => commands::replay(&cli.run, &files),
        Command::Search { budget, pairs, top } => commands::search(&cli.run, budget, pairs, top),
        Command::Render { report, out } => commands::render(&report, out),
    };
    ExitCode::from(code)
}
