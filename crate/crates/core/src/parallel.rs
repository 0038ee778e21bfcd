//! Two-worker variant of the enhanced search: one thread per direction, each
//! with its own queue and label pool, sharing the frontier lists, the
//! incumbent cost and the solution set.
//!
//! Locking: every `(direction, state)` frontier has its own `RwLock`. Only the
//! owning worker ever writes a list, and it never holds two frontier locks at
//! once. The solution mutex is always taken last. A worker publishes a label
//! into its own list before scanning the opposite one, so of two labels that
//! meet at a state at least one sees the other.

use std::collections::BinaryHeap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Mutex, RwLock};
use std::thread;
use std::time::Instant;

use crate::bounds::{initialize, Heuristics};
use crate::cost::{Cost, CostVector, INFINITY};
use crate::enhanced::{match_label, EnhancedOutcome, SolutionPair, SolutionSet, SolutionSink};
use crate::error::Result;
use crate::graph::Direction;
use crate::instance::ProblemInstance;
use crate::label::{Entry, FrontierStore, LabelPool, StateFrontier};
use crate::search::{
    within_perimeter, Deadline, DirectionStats, QueueEntry, SearchConfig, SearchStats, Status,
};

struct Shared {
    frontier: [Vec<RwLock<StateFrontier>>; 2],
    best: AtomicU64,
    solutions: Mutex<SolutionSet>,
    stop: AtomicBool,
    timed_out: AtomicBool,
}

struct SharedSink<'a>(&'a Shared);

impl SolutionSink for SharedSink<'_> {
    fn best(&self) -> Cost {
        self.0.best.load(Ordering::Acquire)
    }

    fn offer(&mut self, pair: SolutionPair) {
        let mut sols = self.0.solutions.lock().unwrap();
        sols.offer(pair);
        self.0.best.fetch_min(sols.best(), Ordering::AcqRel);
    }
}

struct Worker<'a, 'g> {
    d: Direction,
    problem: &'a ProblemInstance<'g>,
    h: &'a Heuristics,
    config: &'a SearchConfig,
    kappa: usize,
    deadline: Deadline,
    shared: &'a Shared,
}

impl Worker<'_, '_> {
    fn run(&self) -> (LabelPool, DirectionStats) {
        let d = self.d;
        let graph = self.problem.graph();
        let k = self.problem.arity();
        let upper = self.problem.upper_bound();
        let mut bound = upper.clone();
        let table = self.h.table(d);
        let mut stats = DirectionStats::default();
        let mut pool = LabelPool::new(d, k);
        let mut queue = BinaryHeap::new();
        let root = match d {
            Direction::Forward => self.problem.start(),
            Direction::Backward => self.problem.goal(),
        };
        let id = pool.push(root, &vec![0; k], None, None);
        queue.push(QueueEntry::new(table.get(root, 0), &vec![0; k], root, id, self.config.tie_break));

        let mut last_f1: Cost = 0;
        let mut sink = SharedSink(self.shared);
        while let Some(x) = queue.pop() {
            let xg = CostVector::from_slice(pool.g(x.label));
            stats.extractions += 1;
            if self.shared.stop.load(Ordering::Relaxed) {
                break;
            }
            if self.deadline.expired(stats.extractions) {
                self.shared.timed_out.store(true, Ordering::Relaxed);
                self.shared.stop.store(true, Ordering::Relaxed);
                break;
            }
            debug_assert!(x.f1 >= last_f1, "f1 decreased in {} queue", d.name());
            last_f1 = x.f1;
            if x.f1 > sink.best() {
                break;
            }
            let s = x.state;
            {
                let mut own = self.shared.frontier[d.index()][s as usize].write().unwrap();
                if own.quick_check(&xg) {
                    continue;
                }
                stats.dominance_checks += 1;
                if own.is_dominated(&xg) {
                    continue;
                }
                own.insert_nondominated(Entry {
                    label: x.label,
                    g: xg.clone(),
                });
            }
            {
                let opposite = self.shared.frontier[d.opposite().index()][s as usize]
                    .read()
                    .unwrap();
                stats.matches += match_label(d, x.label, &xg, &opposite, &upper, &mut sink);
            }

            if !within_perimeter(&xg, self.kappa, &upper) {
                continue;
            }
            stats.expansions += 1;
            bound.set(0, sink.best());
            for (t, e) in graph.successors(d, s) {
                if !self.h.is_alive(t) {
                    continue;
                }
                let g = xg.add(&graph.edge(e).cost);
                let f = g.add_slice(table.at(t));
                if f.primary() == INFINITY || !f.dominates(&bound) {
                    continue;
                }
                if self.shared.frontier[d.index()][t as usize]
                    .read()
                    .unwrap()
                    .quick_check(&g)
                {
                    continue;
                }
                stats.generated += 1;
                let id = pool.push(t, g.as_slice(), Some(x.label), Some(e));
                queue.push(QueueEntry::new(f.primary(), g.as_slice(), t, id, self.config.tie_break));
            }
        }
        (pool, stats)
    }
}

/// Runs the initializer, then the forward and backward searches on two
/// threads. The result contract matches [`crate::enhanced::solve_rcebda`];
/// only statistics and the order in which pairs were found may differ.
pub fn solve_parallel(problem: &ProblemInstance<'_>, config: &SearchConfig) -> Result<EnhancedOutcome> {
    let t0 = Instant::now();
    let kappa = config.critical_index(problem.arity())?;
    let init = initialize(problem, config.reduce_network.unwrap_or(true));
    let mut stats = SearchStats {
        init_time: t0.elapsed(),
        ..SearchStats::default()
    };
    let n = problem.graph().state_count();
    if init.infeasible {
        stats.elapsed = t0.elapsed();
        return Ok(EnhancedOutcome::infeasible(&init, n, problem.arity(), stats));
    }

    let lists = || (0..n).map(|_| RwLock::new(StateFrontier::default())).collect();
    let shared = Shared {
        frontier: [lists(), lists()],
        best: AtomicU64::new(INFINITY),
        solutions: Mutex::new(SolutionSet::new()),
        stop: AtomicBool::new(false),
        timed_out: AtomicBool::new(false),
    };
    let deadline = Deadline::new(t0, config.timeout);
    let worker = |d| Worker {
        d,
        problem,
        h: &init.heuristics,
        config,
        kappa,
        deadline,
        shared: &shared,
    };
    let (fwd, bwd) = thread::scope(|scope| {
        let fwd = worker(Direction::Forward);
        let bwd = worker(Direction::Backward);
        let handle = scope.spawn(move || fwd.run());
        let b = bwd.run();
        (handle.join().expect("forward worker panicked"), b)
    });

    let Shared {
        frontier: [ff, bf],
        solutions,
        timed_out,
        ..
    } = shared;
    let unwrap = |v: Vec<RwLock<StateFrontier>>| -> Vec<StateFrontier> {
        v.into_iter().map(|l| l.into_inner().unwrap()).collect()
    };
    let frontier = FrontierStore::from_lists(unwrap(ff), unwrap(bf));
    debug_assert!(frontier.validate().is_ok(), "{:?}", frontier.validate());
    let solutions = solutions.into_inner().unwrap();

    let status = if timed_out.into_inner() {
        Status::Timeout
    } else if solutions.is_empty() {
        Status::Infeasible
    } else {
        Status::Optimal
    };
    stats.forward = fwd.1;
    stats.backward = bwd.1;
    stats.elapsed = t0.elapsed();
    Ok(EnhancedOutcome {
        status,
        solutions,
        stats,
        killed: init.heuristics.killed(),
        frontier,
        pools: [fwd.0, bwd.0],
    })
}
