//! Instance suites and benchmark reporting.
//!
//! Instance files are CSV with the header `pair_id,start,goal,delta_pct,limits`.
//! `limits` is a `;`-separated list, or `unreachable` when the goal cannot be
//! reached from the start. Ids are 0-based.

use std::io::{BufRead, Read, Write};
use std::time::{Duration, Instant};

use crate::baseline::solve_rcbda;
use crate::cost::{Cost, CostVector};
use crate::enhanced::{solve_rcebda, EnhancedOutcome, SolutionPath};
use crate::error::{RcspError, Result};
use crate::graph::{MultiCostGraph, StateId};
use crate::instance::{budgets_for, ProblemInstance, Tightness};
use crate::oracle::oracle_answer;
use crate::parallel::solve_parallel;
use crate::search::{DirectionStats, SearchConfig, SearchStats, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Rcbda,
    Rcebda,
    RcebdaPar,
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Rcbda,
        Algorithm::Rcebda,
        Algorithm::RcebdaPar,
        Algorithm::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Rcbda => "rcbda",
            Algorithm::Rcebda => "rcebda",
            Algorithm::RcebdaPar => "rcebda-par",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = RcspError;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| RcspError::InvalidInstance(format!("unknown algorithm `{s}`")))
    }
}

/// Uniform view of one solve, whatever the algorithm.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub algorithm: Algorithm,
    pub status: Status,
    pub cost1: Option<Cost>,
    /// Joined cost vectors, sorted. Empty for the baseline, which only
    /// tracks the primary cost.
    pub solutions: Vec<CostVector>,
    pub paths: Vec<SolutionPath>,
    pub stats: SearchStats,
    pub killed: Vec<StateId>,
    pub runtime: Duration,
}

impl SolveReport {
    fn from_enhanced(
        algorithm: Algorithm,
        out: EnhancedOutcome,
        problem: &ProblemInstance<'_>,
        runtime: Duration,
    ) -> Result<Self> {
        Ok(SolveReport {
            algorithm,
            status: out.status,
            cost1: out.cost(),
            solutions: out.joined_vectors(),
            paths: out.reconstruct_paths(problem)?,
            killed: out.killed.clone(),
            stats: out.stats,
            runtime,
        })
    }
}

pub fn run_algorithm(
    algorithm: Algorithm,
    problem: &ProblemInstance<'_>,
    config: &SearchConfig,
) -> Result<SolveReport> {
    let t0 = Instant::now();
    match algorithm {
        Algorithm::Rcbda => {
            let out = solve_rcbda(problem, config)?;
            Ok(SolveReport {
                algorithm,
                status: out.status,
                cost1: out.cost(),
                solutions: Vec::new(),
                paths: Vec::new(),
                stats: out.stats,
                killed: Vec::new(),
                runtime: t0.elapsed(),
            })
        }
        Algorithm::Rcebda => {
            let out = solve_rcebda(problem, config)?;
            SolveReport::from_enhanced(algorithm, out, problem, t0.elapsed())
        }
        Algorithm::RcebdaPar => {
            let out = solve_parallel(problem, config)?;
            SolveReport::from_enhanced(algorithm, out, problem, t0.elapsed())
        }
        Algorithm::Oracle => {
            let a = oracle_answer(problem)?;
            Ok(SolveReport {
                algorithm,
                status: a.status,
                cost1: (a.status == Status::Optimal).then_some(a.cost),
                solutions: a.vectors,
                paths: Vec::new(),
                stats: SearchStats::default(),
                killed: Vec::new(),
                runtime: t0.elapsed(),
            })
        }
    }
}

/// One `(pair, tightness)` benchmark instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceRecord {
    pub pair_id: usize,
    pub start: StateId,
    pub goal: StateId,
    pub delta_pct: u64,
    /// `None` when the goal is unreachable.
    pub limits: Option<Vec<Cost>>,
}

/// Reads `start goal` lines; blank lines and `#` comments are skipped.
pub fn read_pairs<R: BufRead>(reader: R) -> Result<Vec<(StateId, StateId)>> {
    let mut pairs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let bad = || RcspError::Parse {
            line: idx + 1,
            message: format!("expected `start goal`, found `{t}`"),
        };
        let mut it = t.split_whitespace().map(str::parse::<StateId>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(s)), Some(Ok(g)), None) => pairs.push((s, g)),
            _ => return Err(bad()),
        }
    }
    Ok(pairs)
}

/// One record per `(pair, delta)`, pairs outermost.
pub fn generate_records(
    graph: &MultiCostGraph,
    pairs: &[(StateId, StateId)],
    deltas_pct: &[u64],
) -> Result<Vec<InstanceRecord>> {
    let n = graph.state_count();
    let mut out = Vec::with_capacity(pairs.len() * deltas_pct.len());
    for (pair_id, &(start, goal)) in pairs.iter().enumerate() {
        if start as usize >= n || goal as usize >= n {
            return Err(RcspError::InvalidInstance(format!(
                "pair {pair_id} ({start}, {goal}) outside 0..{n}"
            )));
        }
        for &d in deltas_pct {
            out.push(InstanceRecord {
                pair_id,
                start,
                goal,
                delta_pct: d,
                limits: budgets_for(graph, start, goal, Tightness::percent(d)?)?,
            });
        }
    }
    Ok(out)
}

const RECORD_HEADER: [&str; 5] = ["pair_id", "start", "goal", "delta_pct", "limits"];

pub fn write_records<W: Write>(out: W, records: &[InstanceRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RECORD_HEADER)?;
    for r in records {
        let limits = match &r.limits {
            Some(l) => join(l.iter(), ";"),
            None => "unreachable".to_string(),
        };
        w.write_record([
            r.pair_id.to_string(),
            r.start.to_string(),
            r.goal.to_string(),
            r.delta_pct.to_string(),
            limits,
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records<R: Read>(input: R) -> Result<Vec<InstanceRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers()?.clone();
    if header.iter().ne(RECORD_HEADER) {
        return Err(RcspError::Parse {
            line: 1,
            message: format!("expected header `{}`", RECORD_HEADER.join(",")),
        });
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let err = |what: &str| RcspError::Parse {
            line,
            message: format!("invalid {what}"),
        };
        let field = |i: usize| rec.get(i).ok_or_else(|| err(RECORD_HEADER[i]));
        let limits = match field(4)? {
            "unreachable" => None,
            s => Some(
                s.split(';')
                    .map(|x| x.parse::<Cost>().map_err(|_| err("limits")))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        out.push(InstanceRecord {
            pair_id: field(0)?.parse().map_err(|_| err("pair_id"))?,
            start: field(1)?.parse().map_err(|_| err("start"))?,
            goal: field(2)?.parse().map_err(|_| err("goal"))?,
            delta_pct: field(3)?.parse().map_err(|_| err("delta_pct"))?,
            limits,
        });
    }
    Ok(out)
}

/// One row of benchmark output.
#[derive(Clone, Debug)]
pub struct BenchRow {
    pub map: String,
    pub algorithm: Algorithm,
    pub pair_id: usize,
    pub delta_pct: u64,
    pub k: usize,
    /// `optimal`, `infeasible`, `timeout` or `error`.
    pub status: String,
    pub cost1: Option<Cost>,
    pub resources: Option<Vec<Cost>>,
    pub runtime: Duration,
    pub expansions: [u64; 2],
    pub generated: u64,
    pub matches: u64,
    pub solutions: Option<usize>,
}

impl BenchRow {
    pub fn solved(&self) -> bool {
        self.status == Status::Optimal.name() || self.status == Status::Infeasible.name()
    }
}

pub const BENCH_HEADER: [&str; 14] = [
    "map",
    "algo",
    "pair_id",
    "delta",
    "k",
    "status",
    "cost1",
    "resources",
    "runtime_ms",
    "expansions_fwd",
    "expansions_bwd",
    "generated",
    "matches",
    "solutions",
];

pub const SUMMARY_HEADER: [&str; 7] = ["map", "algo", "solved", "total", "t_min_ms", "t_avg_ms", "t_max_ms"];

fn join<T: ToString>(items: impl Iterator<Item = T>, sep: &str) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn ms(d: Duration) -> String {
    format!("{:.3}", d.as_secs_f64() * 1e3)
}

/// Runs every reachable record with every algorithm, in record order.
/// Failures become rows with status `error`; `on_row` sees each row as soon
/// as it is produced.
pub fn run_suite(
    map: &str,
    graph: &MultiCostGraph,
    records: &[InstanceRecord],
    algorithms: &[Algorithm],
    config: &SearchConfig,
    mut on_row: impl FnMut(&BenchRow) -> Result<()>,
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for r in records {
        let Some(limits) = &r.limits else {
            continue;
        };
        for &algorithm in algorithms {
            let mut row = BenchRow {
                map: map.to_string(),
                algorithm,
                pair_id: r.pair_id,
                delta_pct: r.delta_pct,
                k: graph.arity(),
                status: "error".to_string(),
                cost1: None,
                resources: None,
                runtime: Duration::ZERO,
                expansions: [0, 0],
                generated: 0,
                matches: 0,
                solutions: None,
            };
            let t0 = Instant::now();
            let result = ProblemInstance::new(graph, r.start, r.goal, limits.clone())
                .and_then(|p| run_algorithm(algorithm, &p, config));
            row.runtime = t0.elapsed();
            if let Ok(rep) = result {
                let total: DirectionStats = rep.stats.total();
                row.status = rep.status.name().to_string();
                row.cost1 = rep.cost1;
                row.resources = rep.solutions.first().map(|v| v.resources().to_vec());
                row.expansions = [rep.stats.forward.expansions, rep.stats.backward.expansions];
                row.generated = total.generated;
                row.matches = total.matches;
                row.solutions = (algorithm != Algorithm::Rcbda).then_some(rep.solutions.len());
            }
            on_row(&row)?;
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Streams benchmark rows as CSV.
pub struct BenchWriter<W: Write>(csv::Writer<W>);

impl<W: Write> BenchWriter<W> {
    pub fn new(out: W) -> Result<Self> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(BENCH_HEADER)?;
        w.flush()?;
        Ok(BenchWriter(w))
    }

    pub fn write(&mut self, row: &BenchRow) -> Result<()> {
        let opt = |x: Option<String>| x.unwrap_or_default();
        self.0.write_record([
            row.map.clone(),
            row.algorithm.name().to_string(),
            row.pair_id.to_string(),
            row.delta_pct.to_string(),
            row.k.to_string(),
            row.status.clone(),
            opt(row.cost1.map(|c| c.to_string())),
            opt(row.resources.as_ref().map(|r| join(r.iter(), ";"))),
            ms(row.runtime),
            row.expansions[0].to_string(),
            row.expansions[1].to_string(),
            row.generated.to_string(),
            row.matches.to_string(),
            opt(row.solutions.map(|s| s.to_string())),
        ])?;
        self.0.flush()?;
        Ok(())
    }
}

/// Per-algorithm aggregate; unsolved runs count at the timeout.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub map: String,
    pub algorithm: Algorithm,
    pub solved: usize,
    pub total: usize,
    pub t_min: Duration,
    pub t_avg: Duration,
    pub t_max: Duration,
}

pub fn summarize(rows: &[BenchRow], timeout: Duration) -> Vec<SummaryRow> {
    let mut keys: Vec<(String, Algorithm)> = Vec::new();
    for r in rows {
        let key = (r.map.clone(), r.algorithm);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(map, algorithm)| {
            let times: Vec<(bool, Duration)> = rows
                .iter()
                .filter(|r| r.map == map && r.algorithm == algorithm)
                .map(|r| (r.solved(), if r.solved() { r.runtime } else { timeout }))
                .collect();
            let total = times.len();
            let sum: Duration = times.iter().map(|t| t.1).sum();
            SummaryRow {
                map,
                algorithm,
                solved: times.iter().filter(|t| t.0).count(),
                total,
                t_min: times.iter().map(|t| t.1).min().unwrap_or_default(),
                t_avg: sum / total as u32,
                t_max: times.iter().map(|t| t.1).max().unwrap_or_default(),
            }
        })
        .collect()
}

pub fn write_summary<W: Write>(out: W, summary: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_HEADER)?;
    for s in summary {
        w.write_record([
            s.map.clone(),
            s.algorithm.name().to_string(),
            s.solved.to_string(),
            s.total.to_string(),
            ms(s.t_min),
            ms(s.t_avg),
            ms(s.t_max),
        ])?;
    }
    w.flush()?;
    Ok(())
}
