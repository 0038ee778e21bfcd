use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Duration;

use rcsp::bench::{self, BenchWriter};
use rcsp::io::{build_scenario_graph, load_dimacs_gr, read_edge_list, write_edge_list};
use rcsp::{
    instance, run_algorithm, solve_rcebda_traced, Algorithm, MultiCostGraph, ProblemInstance,
    RcspError, SearchConfig, SolveReport, Status, Tightness, INFINITY,
};
use serde_json::{json, Value};

use crate::{AlgoArg, BenchArgs, Format, GenArgs, GraphArgs, GridArgs, SolveArgs};

pub const TIMEOUT_ENV: &str = "RCSP_TIMEOUT_SECS";
const BENCH_DEFAULT_TIMEOUT_SECS: f64 = 3600.0;

type Result<T> = std::result::Result<T, RcspError>;

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| {
        RcspError::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn load_graph(args: &GraphArgs) -> Result<MultiCostGraph> {
    match (&args.graph, &args.dimacs_dist, &args.dimacs_time, args.k) {
        (Some(path), None, None, None) => read_edge_list(open(path)?),
        (None, Some(dist), Some(time), Some(k)) => {
            let dist = load_dimacs_gr(open(dist)?)?;
            let time = load_dimacs_gr(open(time)?)?;
            build_scenario_graph(&dist, &time, k as usize)
        }
        _ => Err(RcspError::InvalidInstance(
            "give --graph, or --dimacs-dist with --dimacs-time and --k".into(),
        )),
    }
}

fn timeout(flag: Option<f64>, default: Option<f64>) -> Result<Option<Duration>> {
    let secs = match flag {
        Some(s) => Some(s),
        None => match std::env::var(TIMEOUT_ENV) {
            Ok(v) => Some(v.trim().parse::<f64>().map_err(|_| {
                RcspError::InvalidInstance(format!("{TIMEOUT_ENV}={v} is not a number"))
            })?),
            Err(_) => default,
        },
    };
    secs.map(|s| {
        Duration::try_from_secs_f64(s)
            .map_err(|_| RcspError::InvalidInstance(format!("invalid timeout {s}")))
    })
    .transpose()
}

fn exit_code(status: Status) -> u8 {
    match status {
        Status::Optimal => 0,
        Status::Infeasible => 2,
        Status::Timeout => 3,
    }
}

pub fn solve(args: SolveArgs) -> Result<u8> {
    if args.trace.is_some() && args.algo != AlgoArg::Rcebda {
        return Err(RcspError::InvalidInstance("--trace requires --algo rcebda".into()));
    }
    let graph = load_graph(&args.graph)?;
    let limits = match (&args.limits, args.delta) {
        (Some(l), None) => l.clone(),
        (None, Some(d)) => {
            let n = graph.state_count() as u32;
            if args.start >= n || args.goal >= n {
                return Err(RcspError::InvalidInstance(format!(
                    "start and goal must lie in 0..{n}"
                )));
            }
            match instance::budgets_for(&graph, args.start, args.goal, Tightness::percent(d)?)? {
                Some(l) => l,
                // Unreachable goal: any limits give the same answer.
                None => vec![INFINITY; graph.arity() - 1],
            }
        }
        _ => unreachable!("clap enforces exactly one of --limits and --delta"),
    };
    let problem = ProblemInstance::new(&graph, args.start, args.goal, limits)?;
    let config = SearchConfig {
        critical_resource: args.critical,
        timeout: timeout(args.timeout, None)?,
        ..SearchConfig::default()
    };
    let algorithm = Algorithm::from(args.algo);
    let report = match &args.trace {
        Some(path) => {
            let mut out = BufWriter::new(File::create(path)?);
            let mut failed = None;
            let t0 = std::time::Instant::now();
            let outcome = solve_rcebda_traced(&problem, &config, |e| {
                if failed.is_none() {
                    if let Err(err) = writeln!(out, "{e}") {
                        failed = Some(err);
                    }
                }
            })?;
            if let Some(err) = failed {
                return Err(err.into());
            }
            out.flush()?;
            SolveReport {
                algorithm,
                status: outcome.status,
                cost1: outcome.cost(),
                solutions: outcome.joined_vectors(),
                paths: outcome.reconstruct_paths(&problem)?,
                killed: outcome.killed.clone(),
                stats: outcome.stats,
                runtime: t0.elapsed(),
            }
        }
        None => run_algorithm(algorithm, &problem, &config)?,
    };
    let mut out = io::stdout().lock();
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &report_json(&report, &problem))
                .map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Text => write_text(&mut out, &report, &problem)?,
    }
    Ok(exit_code(report.status))
}

/// Solutions as `(cost, path)`; paths are only known for the enhanced
/// variants and are listed in cost order.
fn solutions(report: &SolveReport) -> Vec<(Vec<u64>, Option<Vec<u32>>)> {
    if report.paths.is_empty() {
        return report
            .solutions
            .iter()
            .map(|c| (c.as_slice().to_vec(), None))
            .collect();
    }
    let mut paths = report.paths.clone();
    paths.sort_by(|a, b| a.cost.cmp(&b.cost).then_with(|| a.states.cmp(&b.states)));
    paths
        .into_iter()
        .map(|p| (p.cost.as_slice().to_vec(), Some(p.states)))
        .collect()
}

fn report_json(r: &SolveReport, problem: &ProblemInstance<'_>) -> Value {
    let dir = |d: &rcsp::search::DirectionStats| {
        json!({
            "extractions": d.extractions,
            "expansions": d.expansions,
            "generated": d.generated,
            "dominance_checks": d.dominance_checks,
            "matches": d.matches,
        })
    };
    json!({
        "algo": r.algorithm.name(),
        "start": problem.start(),
        "goal": problem.goal(),
        "limits": problem.limits(),
        "status": r.status.name(),
        "cost1": r.cost1,
        "solutions": solutions(r)
            .into_iter()
            .map(|(cost, path)| json!({ "cost": cost, "path": path }))
            .collect::<Vec<_>>(),
        "killed": r.killed,
        "stats": {
            "forward": dir(&r.stats.forward),
            "backward": dir(&r.stats.backward),
            "init_ms": r.stats.init_time.as_secs_f64() * 1e3,
            "runtime_ms": r.runtime.as_secs_f64() * 1e3,
        },
    })
}

fn write_text(out: &mut impl Write, r: &SolveReport, problem: &ProblemInstance<'_>) -> Result<()> {
    writeln!(out, "algo: {}", r.algorithm.name())?;
    writeln!(
        out,
        "instance: {} -> {} limits {:?}",
        problem.start(),
        problem.goal(),
        problem.limits()
    )?;
    writeln!(out, "status: {}", r.status.name())?;
    match r.cost1 {
        Some(c) => writeln!(out, "cost1: {c}")?,
        None => writeln!(out, "cost1: none")?,
    }
    for (cost, path) in solutions(r) {
        let cost = cost.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match path {
            Some(p) => {
                let p = p.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
                writeln!(out, "solution: ({cost}) path: {p}")?
            }
            None => writeln!(out, "solution: ({cost})")?,
        }
    }
    if !r.killed.is_empty() {
        writeln!(out, "reduced: {:?}", r.killed)?;
    }
    let searched = r.algorithm != Algorithm::Oracle;
    for (name, d) in [("fwd", &r.stats.forward), ("bwd", &r.stats.backward)].into_iter().filter(|_| searched) {
        writeln!(
            out,
            "{name}: extracted {} expanded {} generated {} matched {}",
            d.extractions, d.expansions, d.generated, d.matches
        )?;
    }
    writeln!(out, "runtime_ms: {:.3}", r.runtime.as_secs_f64() * 1e3)?;
    Ok(())
}

pub fn gen(args: GenArgs) -> Result<()> {
    if let Some(&d) = args.deltas.iter().find(|&&d| d > 100) {
        return Err(RcspError::InvalidTightness {
            numerator: d,
            denominator: 100,
        });
    }
    let graph = load_graph(&args.graph)?;
    let pairs = bench::read_pairs(open(&args.pairs)?)?;
    let records = bench::generate_records(&graph, &pairs, &args.deltas)?;
    let mut out = output(args.out.as_deref())?;
    bench::write_records(&mut out, &records)?;
    out.flush()?;
    Ok(())
}

fn map_name(args: &BenchArgs) -> String {
    if let Some(m) = &args.map {
        return m.clone();
    }
    let path = args
        .graph
        .graph
        .as_ref()
        .or(args.graph.dimacs_dist.as_ref());
    path.and_then(|p| p.file_stem())
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "map".into())
}

pub fn bench(args: BenchArgs) -> Result<()> {
    let graph = load_graph(&args.graph)?;
    let records = {
        let mut reader = open(&args.instances)?;
        if reader.fill_buf()?.is_empty() {
            Vec::new()
        } else {
            bench::read_records(reader)?
        }
    };
    let limit = timeout(args.timeout, Some(BENCH_DEFAULT_TIMEOUT_SECS))?
        .expect("bench always has a timeout");
    let config = SearchConfig {
        timeout: Some(limit),
        ..SearchConfig::default()
    };
    let algorithms: Vec<Algorithm> = args.algos.iter().map(|&a| a.into()).collect();
    let map = map_name(&args);
    let mut writer = BenchWriter::new(output(args.out.as_deref())?)?;
    let rows = bench::run_suite(&map, &graph, &records, &algorithms, &config, |row| {
        writer.write(row)
    })?;
    drop(writer);
    let summary = bench::summarize(&rows, limit);
    match &args.summary {
        Some(p) => bench::write_summary(BufWriter::new(File::create(p)?), &summary)?,
        None => bench::write_summary(io::stderr().lock(), &summary)?,
    }
    Ok(())
}

pub fn grid(args: GridArgs) -> Result<()> {
    if args.width * args.height < 2 || args.k < 2 || args.max_cost == 0 {
        return Err(RcspError::InvalidInstance(
            "grid needs at least two states, k >= 2 and a positive maximum cost".into(),
        ));
    }
    let graph = rcsp::generate::grid_graph(args.width, args.height, args.k, args.max_cost, args.seed)?;
    let mut out = output(args.out.as_deref())?;
    write_edge_list(&mut out, &graph)?;
    out.flush()?;
    Ok(())
}
