use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Exact distance geometry on the line: reductions, gadgets, realizer and
/// approximate-realization tools.
#[derive(Debug, Parser)]
#[command(name = "edgp", version, about)]
pub struct Cli {
    /// Print a single JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a graph, realization or DIMACS file and print it canonically.
    Parse {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Reduce SAT or PARTITION instances to line-realization instances.
    Reduce {
        #[command(subcommand)]
        source: ReduceSource,
    },
    /// Lift a 1D instance to K dimensions with gadget replacement.
    Lift {
        #[arg(long, value_enum)]
        gadget: LiftGadget,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Replace every weight-1 edge (clique gadget only).
        #[arg(long)]
        all: bool,
        input: PathBuf,
        output: Option<PathBuf>,
    },
    /// Replace weights 3, 4, 5, 8 by T gadgets, leaving weights 1 and 2.
    ExpandWeights { input: PathBuf, output: Option<PathBuf> },
    /// Gadget templates.
    Gadget {
        #[command(subcommand)]
        action: GadgetAction,
    },
    /// Find (or enumerate) realizations on the line.
    Solve {
        input: PathBuf,
        #[arg(long)]
        enumerate: bool,
        #[arg(long, default_value_t = 1000)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Is there a realization incongruent to the given one?
    Ambiguous { graph: PathBuf, realization: PathBuf },
    /// Verify a realization exactly (or within a tolerance for K > 1 input).
    Verify {
        graph: PathBuf,
        realization: PathBuf,
        #[arg(long, default_value = "0")]
        tol: String,
    },
    /// Check an epsilon-approximate realization.
    VerifyApprox {
        graph: PathBuf,
        realization: PathBuf,
        #[arg(long)]
        eps: String,
    },
    /// Round an approximate line realization to an exact one.
    Round {
        graph: PathBuf,
        realization: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide approximate realizability of a single cycle.
    CycleDecide {
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u64>,
        #[arg(long)]
        delta: String,
        /// With an epsilon, answer the (epsilon, delta) promise problem.
        #[arg(long)]
        eps: Option<String>,
    },
    /// Longest simple cycle and the induced tolerance threshold.
    Cycles {
        input: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Minimal embedding dimension of a complete graph.
    Dimension { input: PathBuf },
    /// Turn a 3SAT formula into an always-satisfiable one with a designated model.
    Ambiguate {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Rewrite width-4 clauses into width-3 clauses.
    Desugar {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ambiguate, desugar and compile; emit the graph and designated realization.
    Pipeline {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Enumerate satisfying assignments.
    Models {
        input: PathBuf,
        #[arg(long, default_value_t = 1000)]
        cap: usize,
    },
    /// Run the seeded property and golden-value suites.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Graph,
    Cnf,
    Realization,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LiftGadget {
    Saxe,
    Clique,
    Rbar,
}

#[derive(Debug, Subcommand)]
pub enum ReduceSource {
    /// 3SAT to an anchored line instance.
    Sat {
        #[arg(long)]
        dimacs: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a JSON map from model bitstrings to realizations.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, default_value_t = 1024)]
        cap: usize,
    },
    /// PARTITION to a path with equal end anchors.
    Partition {
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GadgetAction {
    /// Print a template in graph format.
    Emit {
        #[arg(long)]
        kind: String,
        /// Clique size or Rbar dimension.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = edgp::reproduce::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Variable bound for random formulas.
    #[arg(long)]
    pub n: Option<usize>,
    /// Clause bound for random formulas.
    #[arg(long)]
    pub m: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match commands::run(cli.command) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
