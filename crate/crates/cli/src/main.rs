//! `ohs`: rank graphs, play online hitting-set games, verify colorings,
//! build decomposition forests and draw geometric runs.

mod commands;
mod files;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ohs::umcolor::SeparatorStrategy;

#[derive(Parser)]
#[command(name = "ohs", version, about = "Online hitting set experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    PathRuler,
    TreeCentroid,
    Separator,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Separator {
    Centroid,
    GreedyDegree,
    ExactMinimum,
}

impl From<Separator> for SeparatorStrategy {
    fn from(s: Separator) -> Self {
        match s {
            Separator::Centroid => SeparatorStrategy::Centroid,
            Separator::GreedyDegree => SeparatorStrategy::GreedyDegree,
            Separator::ExactMinimum => SeparatorStrategy::ExactMinimum,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Alg {
    Algc,
    Lowest,
    Algp,
    Algd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AdversaryKind {
    Nested,
    Parabola,
    CollinearDiscs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Um,
    Umin,
    Ranking,
}

#[derive(Subcommand)]
enum Command {
    /// Vertex-rank a graph file.
    Rank {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        strategy: Strategy,
        #[arg(long, value_enum, default_value = "centroid")]
        separator: Separator,
        /// Write the coloring here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play an online game and report the competitive ratio.
    Run(RunArgs),
    /// Check a coloring against a hypergraph or graph.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long, value_enum)]
        mode: VerifyMode,
    },
    /// Build the decomposition forest of a hypergraph or graph by replaying
    /// an online algorithm.
    Decompose {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "algc")]
        alg: Alg,
        /// Unique-max coloring for algc; computed exactly when omitted.
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long)]
        forest_out: Option<PathBuf>,
        #[arg(long)]
        coloring_out: Option<PathBuf>,
    },
    /// Draw a points instance and, optionally, a run transcript.
    Svg {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "algp")]
        alg: Alg,
        #[arg(long)]
        transcript: Option<PathBuf>,
        #[arg(long)]
        svg_out: PathBuf,
    },
}

#[derive(clap::Args)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub alg: Alg,
    /// Hypergraph, graph or points file.
    #[arg(long)]
    pub instance: Option<PathBuf>,
    /// JSON-lines query stream.
    #[arg(long, conflicts_with = "adversary")]
    pub queries: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub adversary: Option<AdversaryKind>,
    /// Instance size for adversaries.
    #[arg(long)]
    pub n: Option<usize>,
    /// Generate this many random queries for the instance.
    #[arg(long, conflicts_with_all = ["queries", "adversary"])]
    pub random_queries: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Unique-max coloring for algc over a hypergraph.
    #[arg(long)]
    pub coloring: Option<PathBuf>,
    /// Ratio report (JSON).
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub transcript: Option<PathBuf>,
    #[arg(long)]
    pub svg_out: Option<PathBuf>,
    #[arg(long)]
    pub check_bound: Option<ohs::arena::Bound>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Rank { instance, strategy, separator, out } => {
            commands::rank(&instance, strategy, separator.into(), out.as_deref())
        }
        Command::Run(args) => commands::run(&args),
        Command::Verify { instance, coloring, mode } => commands::verify(&instance, &coloring, mode),
        Command::Decompose { instance, alg, coloring, forest_out, coloring_out } => commands::decompose(
            &instance,
            alg,
            coloring.as_deref(),
            forest_out.as_deref(),
            coloring_out.as_deref(),
        ),
        Command::Svg { instance, alg, transcript, svg_out } => {
            commands::svg(&instance, alg, transcript.as_deref(), &svg_out)
        }
    };
    match outcome {
        Ok(commands::Outcome::Pass) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Fail(msg)) => {
            eprintln!("FAIL: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
