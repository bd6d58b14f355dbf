use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use braidvc_cli::bench::BenchParams;
use braidvc_cli::report::Format;
use braidvc_cli::CommonOpts;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

/// Exact vertex cover on max-degree-4 graphs, slab hitting sets, and the
/// cubic-to-braid reduction pipeline.
///
/// Exit codes: 0 feasible, 1 infeasible, 2 input error, 3 internal limit.
#[derive(Parser, Debug)]
#[command(name = "braidvc", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Decide k-vertex-cover on a DIMACS graph of maximum degree 4.
    Solve {
        graph: PathBuf,
        #[arg(long)]
        budget: u32,
        #[arg(long)]
        node_cap: Option<u64>,
        /// Accept degrees above 4 via a generic branching (no running-time
        /// claim).
        #[arg(long)]
        permissive_degree: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Minimum hitting set for all axis-parallel slabs induced by a point
    /// set, via the braid graph equivalence.
    HitSlabs {
        points: PathBuf,
        #[arg(long)]
        budget: u32,
        #[arg(long)]
        node_cap: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Transform a cubic bridgeless graph into a braid graph; writes
    /// OUT.braid, OUT.dimacs and OUT.ledger.json.
    Reduce {
        graph: PathBuf,
        /// Source budget k; the output query budget is 2k + offset.
        #[arg(long)]
        budget: Option<u32>,
        /// Output file prefix.
        #[arg(long, default_value = "reduction")]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Check that a braid file's two paths cover a DIMACS graph exactly.
    Verify {
        graph: PathBuf,
        braid: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Solve random max-degree-4 instances at their optimum and fit the
    /// node-growth base.
    Bench {
        #[arg(long, default_value_t = 20)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        n_min: u32,
        #[arg(long, default_value_t = 18)]
        n_max: u32,
        /// Budget for instances above the oracle cap (skipped otherwise).
        #[arg(long)]
        budget: Option<u32>,
        #[arg(long, default_value_t = 26)]
        oracle_cap: u32,
        #[arg(long)]
        node_cap: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Solve {
            graph,
            budget,
            node_cap,
            permissive_degree,
            format,
        } => {
            let opts = CommonOpts {
                format: format.into(),
                node_cap,
                permissive_degree,
            };
            braidvc_cli::cmd_solve(&graph, budget, &opts)
        }
        Cmd::HitSlabs {
            points,
            budget,
            node_cap,
            format,
        } => {
            let opts = CommonOpts {
                format: format.into(),
                node_cap,
                permissive_degree: false,
            };
            braidvc_cli::cmd_hit_slabs(&points, budget, &opts)
        }
        Cmd::Reduce {
            graph,
            budget,
            out,
            format,
        } => {
            let opts = CommonOpts {
                format: format.into(),
                node_cap: None,
                permissive_degree: false,
            };
            braidvc_cli::cmd_reduce(&graph, budget, &out, &opts)
        }
        Cmd::Verify {
            graph,
            braid,
            format,
        } => {
            let opts = CommonOpts {
                format: format.into(),
                node_cap: None,
                permissive_degree: false,
            };
            braidvc_cli::cmd_verify(&graph, &braid, &opts)
        }
        Cmd::Bench {
            trials,
            seed,
            n_min,
            n_max,
            budget,
            oracle_cap,
            node_cap,
            format,
        } => {
            let params = BenchParams {
                trials,
                seed,
                n_min,
                n_max,
                fixed_budget: budget,
                oracle_cap,
                node_cap,
            };
            braidvc_cli::cmd_bench(&params, format.into())
        }
    };
    ExitCode::from(code)
}
