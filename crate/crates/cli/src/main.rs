mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Resource constrained shortest path solver and benchmark harness.
///
/// State ids are 0-based everywhere, including for graphs read from DIMACS
/// files (DIMACS vertex `v` is state `v - 1`).
#[derive(Parser, Debug)]
#[command(name = "rcsp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one instance.
    Solve(SolveArgs),
    /// Write benchmark instance records for a map and a pairs file.
    Gen(GenArgs),
    /// Run algorithms over an instance file and emit CSV.
    Bench(BenchArgs),
    /// Write a random 4-connected grid graph as an edge list.
    Grid(GridArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = true)]
struct GraphArgs {
    /// Edge-list file: state count, edge count, then `u v c1 .. ck` lines.
    #[arg(long, conflicts_with_all = ["dimacs_dist", "dimacs_time", "k"])]
    graph: Option<PathBuf>,
    /// DIMACS distance layer (.gr).
    #[arg(long, requires_all = ["dimacs_time", "k"])]
    dimacs_dist: Option<PathBuf>,
    /// DIMACS time layer (.gr) with the same arcs as the distance layer.
    #[arg(long, requires_all = ["dimacs_dist", "k"])]
    dimacs_time: Option<PathBuf>,
    /// Number of cost components of the DIMACS scenario.
    #[arg(long, value_parser = clap::value_parser!(u8).range(3..=4), requires = "dimacs_dist")]
    k: Option<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Rcbda,
    Rcebda,
    RcebdaPar,
    Oracle,
}

impl From<AlgoArg> for rcsp::Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Rcbda => rcsp::Algorithm::Rcbda,
            AlgoArg::Rcebda => rcsp::Algorithm::Rcebda,
            AlgoArg::RcebdaPar => rcsp::Algorithm::RcebdaPar,
            AlgoArg::Oracle => rcsp::Algorithm::Oracle,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    start: u32,
    #[arg(long)]
    goal: u32,
    /// Resource limits, comma separated.
    #[arg(long, value_delimiter = ',', required_unless_present = "delta", conflicts_with = "delta")]
    limits: Option<Vec<u64>>,
    /// Tightness in percent; limits are interpolated between each resource's
    /// minimum and its use on the unconstrained optimal path.
    #[arg(long, value_parser = clap::value_parser!(u64).range(0..=100))]
    delta: Option<u64>,
    #[arg(long, value_enum, default_value = "rcebda")]
    algo: AlgoArg,
    /// Wall-clock limit in seconds; defaults to $RCSP_TIMEOUT_SECS if set.
    #[arg(long)]
    timeout: Option<f64>,
    /// Write one line per extraction to this file (rcebda only).
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// 1-based cost index whose budget is split between the two directions.
    #[arg(long)]
    critical: Option<usize>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// File with one `start goal` pair per line.
    #[arg(long)]
    pairs: PathBuf,
    /// Tightness values in percent.
    #[arg(long, value_delimiter = ',', default_value = "10,30,50,70,90")]
    deltas: Vec<u64>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Instance file written by `rcsp gen`.
    #[arg(long)]
    instances: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "rcbda,rcebda")]
    algos: Vec<AlgoArg>,
    /// Per-instance limit in seconds; defaults to $RCSP_TIMEOUT_SECS, else 3600.
    #[arg(long)]
    timeout: Option<f64>,
    /// Map name used in the `map` column; defaults to the graph file stem.
    #[arg(long)]
    map: Option<String>,
    /// Row output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Summary output file; stderr when omitted.
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long)]
    width: usize,
    #[arg(long)]
    height: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 10)]
    max_cost: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Solve(a) => commands::solve(a),
        Command::Gen(a) => commands::gen(a).map(|()| 0),
        Command::Bench(a) => commands::bench(a).map(|()| 0),
        Command::Grid(a) => commands::grid(a).map(|()| 0),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
