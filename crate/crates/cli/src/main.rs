//! `catwl`: lift hypergraphs, run refinement tests and batteries, render posets.
//!
//! Exit codes: 0 not distinguished (or success), 1 distinguished (or a
//! battery with soundness violations), 2 error.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use catwl::lift::Functor;
use catwl::poset::AdjacencySemantics;
use catwl::wl::AdjacencySet;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "catwl", version, about = "Lift hypergraphs into graded posets and compare them by colour refinement")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
struct TruncationArgs {
    /// Hyperedges larger than this keep only their vertices in the symmetric lift
    #[arg(long, default_value_t = 20)]
    tau: usize,
    /// Largest simplex dimension in the symmetric lift
    #[arg(long)]
    max_dim: Option<usize>,
}

#[derive(Args, Clone, Debug)]
struct RefineArgs {
    /// Adjacency semantics: pair or distinct
    #[arg(long, default_value = "pair")]
    semantics: AdjacencySemantics,
    /// Enabled adjacencies as letters from `bclu`
    #[arg(long, default_value = "bclu")]
    adjacency: AdjacencySet,
    /// Iteration cap (defaults to one more than the larger poset)
    #[arg(long)]
    iters: Option<usize>,
}

#[derive(Args, Clone, Debug)]
struct MpnArgs {
    /// Readout quantum for message-passing features
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Message-passing layers
    #[arg(long, default_value_t = 2)]
    layers: usize,
    /// Feature width
    #[arg(long, default_value_t = 16)]
    width: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TestMethod {
    Hwl,
    CatwlI,
    CatwlS,
    HinI,
    HinS,
}

#[derive(Subcommand)]
enum Command {
    /// Lift a hypergraph file into a graded poset
    Lift {
        input: PathBuf,
        /// i (incidence) or s (symmetric simplicial)
        #[arg(long, default_value = "i")]
        functor: Functor,
        #[command(flatten)]
        truncation: TruncationArgs,
        /// Write poset JSON here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the Hasse diagram as DOT
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compare two hypergraph files
    Test {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum)]
        method: TestMethod,
        #[command(flatten)]
        truncation: TruncationArgs,
        #[command(flatten)]
        refine: RefineArgs,
        #[command(flatten)]
        mpn: MpnArgs,
        /// Weight seed, required for hin methods
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every configuration over generated pairs and write a CSV report
    Battery(BatteryArgs),
    /// Write the counterexample pair and a walkthrough of its first refinement step
    Counterexample {
        /// Directory to write into; prints the walkthrough when absent
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Render a poset file as a DOT Hasse diagram
    Render {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone, Debug)]
struct BatteryArgs {
    /// Random pairs with matched node count and cardinality profile
    #[arg(long, default_value_t = 0)]
    pairs: usize,
    /// Pairs made of a random hypergraph and a relabelling of it
    #[arg(long, default_value_t = 0)]
    iso_pairs: usize,
    /// Prepend the counterexample pair
    #[arg(long)]
    include_counterexample: bool,
    /// Seed for pair generation and message-passing weights
    #[arg(long)]
    seed: Option<u64>,
    /// Adjacency subsets, comma separated
    #[arg(long, value_delimiter = ',', default_value = "bu,blu,bclu")]
    configs: Vec<AdjacencySet>,
    /// Lifts to run, comma separated
    #[arg(long, value_delimiter = ',', default_value = "i,s")]
    functors: Vec<Functor>,
    /// Adjacency semantics to run, comma separated
    #[arg(long, value_delimiter = ',', default_value = "pair,distinct")]
    semantics: Vec<AdjacencySemantics>,
    /// Add the bipartite hypergraph baseline column
    #[arg(long)]
    hwl: bool,
    /// Add a message-passing column per refinement column, seeded by --seed
    #[arg(long)]
    hin: bool,
    /// Check every pair with the exhaustive isomorphism search
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = 3)]
    min_nodes: usize,
    #[arg(long, default_value_t = 7)]
    max_nodes: usize,
    #[arg(long, default_value_t = 1)]
    min_edges: usize,
    #[arg(long, default_value_t = 5)]
    max_edges: usize,
    #[arg(long, default_value_t = 1)]
    min_card: usize,
    #[arg(long, default_value_t = 3)]
    max_card: usize,
    #[command(flatten)]
    truncation: TruncationArgs,
    #[command(flatten)]
    mpn: MpnArgs,
    /// Write CSV here (plus a `.manifest.json` sidecar) instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
