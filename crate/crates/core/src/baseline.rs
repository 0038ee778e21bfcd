//! Baseline bidirectional constrained A*: eager dominance pruning at
//! generation time, half-budget perimeter on the critical resource, and
//! scalar-optimum path matching.
//!
//! Only the optimal primary cost is reported. Labels are appended to the
//! explored lists unconditionally, so dominated labels that slipped into the
//! queue before their dominator was explored may still be expanded.

use std::collections::BinaryHeap;
use std::time::Instant;

use crate::bounds::{initialize, Heuristics, Initialization};
use crate::cost::{Cost, CostVector, INFINITY};
use crate::error::Result;
use crate::graph::{Direction, StateId};
use crate::instance::ProblemInstance;
use crate::search::{
    pick_direction, within_perimeter, Deadline, QueueEntry, SearchConfig, SearchStats, Status,
};

#[derive(Clone, Debug)]
pub struct BaselineOutcome {
    pub status: Status,
    /// Best known primary cost; `INFINITY` if none was found.
    pub upper_bound: Cost,
    pub stats: SearchStats,
}

impl BaselineOutcome {
    pub fn cost(&self) -> Option<Cost> {
        (self.upper_bound != INFINITY).then_some(self.upper_bound)
    }
}

/// Initializes heuristics (without network reduction unless the config asks
/// for it) and runs the baseline search.
pub fn solve_rcbda(problem: &ProblemInstance<'_>, config: &SearchConfig) -> Result<BaselineOutcome> {
    let t0 = Instant::now();
    let init = initialize(problem, config.reduce_network.unwrap_or(false));
    let init_time = t0.elapsed();
    let mut out = solve_rcbda_with_heuristics(problem, &init, config)?;
    out.stats.init_time = init_time;
    out.stats.elapsed += init_time;
    Ok(out)
}

pub fn solve_rcbda_with_heuristics(
    problem: &ProblemInstance<'_>,
    init: &Initialization,
    config: &SearchConfig,
) -> Result<BaselineOutcome> {
    let t0 = Instant::now();
    let kappa = config.critical_index(problem.arity())?;
    let mut stats = SearchStats::default();
    if init.infeasible {
        stats.elapsed = t0.elapsed();
        return Ok(BaselineOutcome {
            status: Status::Infeasible,
            upper_bound: INFINITY,
            stats,
        });
    }
    let h: &Heuristics = &init.heuristics;
    let graph = problem.graph();
    let k = problem.arity();
    let deadline = Deadline::new(t0, config.timeout);

    let mut upper = problem.upper_bound();
    let mut explored: [Vec<Vec<CostVector>>; 2] = [
        vec![Vec::new(); graph.state_count()],
        vec![Vec::new(); graph.state_count()],
    ];
    let mut queues: [BinaryHeap<QueueEntry>; 2] = [BinaryHeap::new(), BinaryHeap::new()];
    // Cost vectors of generated labels, `k` per label.
    let mut costs: Vec<Cost> = Vec::new();
    for (d, root) in [
        (Direction::Forward, problem.start()),
        (Direction::Backward, problem.goal()),
    ] {
        let id = (costs.len() / k) as u32;
        costs.extend(std::iter::repeat_n(0, k));
        let f1 = h.table(d).get(root, 0);
        queues[d.index()].push(QueueEntry::new(f1, &vec![0; k], root, id, config.tie_break));
    }

    let mut last_f1 = [0 as Cost; 2];
    let mut total_extractions = 0u64;
    let mut status = Status::Optimal;
    loop {
        let fronts = [queues[0].peek().map(|q| q.f1), queues[1].peek().map(|q| q.f1)];
        let Some(d) = pick_direction(fronts, config.direction_priority) else {
            break;
        };
        let x = queues[d.index()].pop().unwrap();
        let at = x.label as usize * k;
        let xg = CostVector::from_slice(&costs[at..at + k]);
        total_extractions += 1;
        stats.direction_mut(d).extractions += 1;
        if deadline.expired(total_extractions) {
            status = Status::Timeout;
            break;
        }
        debug_assert!(x.f1 >= last_f1[d.index()], "f1 decreased in {} queue", d.name());
        last_f1[d.index()] = x.f1;

        if x.f1 >= upper.primary() {
            break;
        }
        let table = h.table(d);
        if within_perimeter(&xg, kappa, &upper) {
            stats.direction_mut(d).expansions += 1;
            for (t, e) in graph.successors(d, x.state) {
                if !h.is_alive(t) {
                    continue;
                }
                let g = xg.add(&graph.edge(e).cost);
                let f = g.add_slice(table.at(t));
                if f.primary() == INFINITY || !f.dominates(&upper) {
                    continue;
                }
                stats.direction_mut(d).dominance_checks += 1;
                if explored[d.index()][t as usize]
                    .iter()
                    .any(|y| y.truncated_dominates(&g))
                {
                    continue;
                }
                stats.direction_mut(d).generated += 1;
                let id = (costs.len() / k) as u32;
                costs.extend_from_slice(g.as_slice());
                queues[d.index()].push(QueueEntry::new(f.primary(), g.as_slice(), t, id, config.tie_break));
            }
        }

        let s: StateId = x.state;
        for y in &explored[d.opposite().index()][s as usize] {
            let joined = xg.add(y);
            if joined.dominates(&upper) {
                stats.direction_mut(d).matches += 1;
                upper.set(0, joined.primary());
            }
        }
        explored[d.index()][s as usize].push(xg);
    }

    if status != Status::Timeout && upper.primary() == INFINITY {
        status = Status::Infeasible;
    }
    stats.elapsed = t0.elapsed();
    Ok(BaselineOutcome {
        status,
        upper_bound: upper.primary(),
        stats,
    })
}
