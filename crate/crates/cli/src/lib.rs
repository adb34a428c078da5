//! `riccinet` command-line front end.
//!
//! Every command reads an edge list (or generates a graph), runs the core
//! algorithms and writes one CSV or JSON table. File outputs are written
//! atomically and get a `<output>.manifest.json` sidecar recording the
//! command line, seeds, generator parameters, RNG, version and input
//! digests.

pub mod commands;
pub mod experiments;
pub mod format;
pub mod manifest;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use riccinet_core::FaceMembership;

#[derive(Debug, Parser)]
#[command(name = "riccinet", version, about = "Ricci curvature of directed networks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Edge list: `source target [weight]` per line, `#` comments, a lone
    /// token declares a vertex.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Optional `vertex weight` file for the input graph.
    #[arg(long, global = true)]
    pub vertex_weights: Option<PathBuf>,
    /// Output file; stdout when absent (no manifest sidecar then).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Base seed for generators and random removal.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Er,
    Sf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Faces {
    /// An edge belongs to a face when it is any of its three edges.
    #[default]
    Any,
    /// Only the direct `x -> y` edge of a face counts.
    Direct,
}

impl From<Faces> for FaceMembership {
    fn from(f: Faces) -> Self {
        match f {
            Faces::Any => FaceMembership::AnyEdge,
            Faces::Direct => FaceMembership::DirectEdgeOnly,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Measure {
    Fr,
    Afr,
    Or,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Edge,
    Vertex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ranking {
    /// Rank once on the intact graph.
    Static,
    /// Re-rank after every batch (slow with OR).
    Recompute,
}

#[derive(Debug, Clone, Args)]
pub struct GeneratorArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// ER edge probability.
    #[arg(long)]
    pub p: Option<f64>,
    /// SF edge count.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 2.1)]
    pub lambda_in: f64,
    #[arg(long, default_value_t = 2.1)]
    pub lambda_out: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample an ER or scale-free fitness-model digraph as an edge list.
    Generate {
        #[arg(long, value_enum)]
        model: Model,
        #[command(flatten)]
        params: GeneratorArgs,
    },
    /// Per-edge FR, AFR and OR table.
    Curvature {
        #[arg(long, value_enum, value_delimiter = ',', default_value = "fr,afr,or")]
        measures: Vec<Measure>,
        #[arg(long, value_enum, default_value_t)]
        faces: Faces,
    },
    /// Per-vertex curvature, degree, betweenness and PageRank table.
    VertexCurvature {
        #[arg(long, value_enum, default_value_t)]
        faces: Faces,
        /// Leave the OR columns empty (needed for weighted graphs).
        #[arg(long)]
        no_or: bool,
    },
    /// Spearman correlations between column pairs, on the input graph or
    /// averaged over generated replicates.
    Correlate {
        /// Column pairs `x:y`, comma separated.
        #[arg(long = "pairs", value_delimiter = ',')]
        pairs: Vec<String>,
        /// Named pair group (see `experiments::PRESETS`).
        #[arg(long)]
        preset: Option<String>,
        /// Generate replicates instead of reading `--input`.
        #[arg(long, value_enum)]
        model: Option<Model>,
        #[command(flatten)]
        params: GeneratorArgs,
        /// Replicates use seeds `seed, seed + 1, ...`.
        #[arg(long, default_value_t = 20)]
        seeds: usize,
        #[arg(long, value_enum, default_value_t)]
        faces: Faces,
    },
    /// Communication efficiency while removing edges or vertices.
    Robustness {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Strategy names, comma separated; default: every strategy of the
        /// family plus `random`.
        #[arg(long, value_delimiter = ',')]
        strategies: Vec<String>,
        #[arg(long, default_value_t = 0.02)]
        step: f64,
        #[arg(long, default_value_t = 0.5)]
        max: f64,
        #[arg(long, value_enum, default_value_t = Ranking::Static)]
        ranking: Ranking,
    },
    /// Equal-width histogram of one edge or vertex column.
    Hist {
        #[arg(long)]
        column: String,
        #[arg(long, default_value_t = 20)]
        bins: usize,
        #[arg(long, value_enum, default_value_t)]
        faces: Faces,
    },
    /// Edge list of the edges whose measure is at most `threshold`.
    Subnetwork {
        /// One of fr, afr, or, ebc.
        #[arg(long)]
        measure: String,
        #[arg(long, allow_hyphen_values = true)]
        threshold: f64,
        #[arg(long, value_enum, default_value_t)]
        faces: Faces,
    },
}

/// Runs a parsed command; `command_line` is recorded in the manifest.
pub fn run(cli: Cli, command_line: Vec<String>) -> anyhow::Result<()> {
    if let Some(t) = cli.global.threads {
        // Fails only if a pool already exists, in which case it is reused.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    commands::dispatch(cli, command_line)
}
