//! Enhanced bidirectional constrained A*.
//!
//! Differences from the baseline search:
//!
//! * heuristics come from the reducing initializer, so dead states are never
//!   touched;
//! * dominance is checked lazily, when a label is extracted, after a quick
//!   comparison with the most recent label explored at the same state;
//! * explored labels live in two lists per state (see [`crate::label`]);
//! * matching records every primary-optimal join whose resource vector is
//!   not dominated by another one, and scans the demoted list of the opposite
//!   frontier only when some main-list join was within the resource limits;
//! * the search stops only once an extracted `f1` strictly exceeds the
//!   incumbent, so all equal-cost solutions are enumerated.

use std::collections::BinaryHeap;
use std::fmt;
use std::time::Instant;

use crate::bounds::{initialize, Initialization};
use crate::cost::{Cost, CostVector, INFINITY};
use crate::error::{RcspError, Result};
use crate::graph::{Direction, MultiCostGraph, StateId};
use crate::instance::ProblemInstance;
use crate::label::{Entry, FrontierStore, LabelId, LabelPool, StateFrontier};
use crate::search::{
    pick_direction, within_perimeter, Deadline, QueueEntry, SearchConfig, SearchStats, Status,
};

/// A forward and a backward label meeting at the same state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionPair {
    pub forward: LabelId,
    pub backward: LabelId,
    /// `g(forward) + g(backward)`.
    pub joined: CostVector,
}

/// Incumbent primary cost and the resource-unique, non-dominated joins that
/// achieve it.
#[derive(Clone, Debug)]
pub struct SolutionSet {
    best: Cost,
    pairs: Vec<SolutionPair>,
}

impl Default for SolutionSet {
    fn default() -> Self {
        SolutionSet {
            best: INFINITY,
            pairs: Vec::new(),
        }
    }
}

impl SolutionSet {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn best(&self) -> Cost {
        self.best
    }

    pub fn pairs(&self) -> &[SolutionPair] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// Joined cost vectors, sorted.
    pub fn joined_vectors(&self) -> Vec<CostVector> {
        let mut v: Vec<_> = self.pairs.iter().map(|p| p.joined.clone()).collect();
        v.sort();
        v
    }

    /// Offers an in-bounds join. A strictly cheaper join replaces the whole
    /// set; an equal-cost join is kept only if no stored join has resources
    /// at most its own, and evicts stored joins it dominates.
    pub fn offer(&mut self, pair: SolutionPair) -> bool {
        let cost = pair.joined.primary();
        if cost > self.best {
            return false;
        }
        if cost < self.best {
            self.best = cost;
            self.pairs.clear();
        }
        if self
            .pairs
            .iter()
            .any(|p| p.joined.truncated_dominates(&pair.joined))
        {
            return false;
        }
        self.pairs
            .retain(|p| !pair.joined.truncated_dominates(&p.joined));
        self.pairs.push(pair);
        true
    }

    /// Checks the solution-set invariants against the resource limits.
    pub fn validate(&self, upper: &CostVector) -> std::result::Result<(), String> {
        for p in &self.pairs {
            if p.joined.primary() != self.best {
                return Err(format!("pair {} does not cost {}", p.joined, self.best));
            }
            if !p.joined.truncated_dominates(upper) {
                return Err(format!("pair {} exceeds the limits", p.joined));
            }
        }
        for (i, a) in self.pairs.iter().enumerate() {
            for (j, b) in self.pairs.iter().enumerate() {
                if i != j && a.joined.truncated_dominates(&b.joined) {
                    return Err(format!("{} dominates {}", a.joined, b.joined));
                }
            }
        }
        Ok(())
    }
}

/// Where matching sends its joins. Lets the sequential and the concurrent
/// search share one matching routine.
pub trait SolutionSink {
    fn best(&self) -> Cost;
    fn offer(&mut self, pair: SolutionPair);
}

impl SolutionSink for SolutionSet {
    fn best(&self) -> Cost {
        self.best
    }

    fn offer(&mut self, pair: SolutionPair) {
        SolutionSet::offer(self, pair);
    }
}

fn pair_for(d: Direction, x: LabelId, y: LabelId, joined: CostVector) -> SolutionPair {
    match d {
        Direction::Forward => SolutionPair {
            forward: x,
            backward: y,
            joined,
        },
        Direction::Backward => SolutionPair {
            forward: y,
            backward: x,
            joined,
        },
    }
}

/// Joins label `x` (direction `d`, cost `g`) with the opposite frontier of
/// its state. Returns the number of in-bounds joins offered.
///
/// The demoted list is scanned only if some main-list join respects every
/// resource limit: each demoted member is resource-dominated by a main-list
/// member, so otherwise none of its joins could either.
pub fn match_label<S: SolutionSink>(
    d: Direction,
    x: LabelId,
    g: &CostVector,
    opposite: &StateFrontier,
    upper: &CostVector,
    sink: &mut S,
) -> u64 {
    let mut offered = 0;
    let mut any_within_limits = false;
    for y in opposite.main() {
        let joined = g.add(&y.g);
        if joined.truncated_dominates(upper) {
            any_within_limits = true;
            if joined.primary() <= sink.best() {
                offered += 1;
                sink.offer(pair_for(d, x, y.label, joined));
            }
        }
    }
    if any_within_limits {
        for y in opposite.demoted() {
            let joined = g.add(&y.g);
            if joined.truncated_dominates(upper) && joined.primary() <= sink.best() {
                offered += 1;
                sink.offer(pair_for(d, x, y.label, joined));
            }
        }
    }
    offered
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceAction {
    PrunedQuick,
    PrunedDominated,
    Expanded,
    PerimeterBlocked,
}

impl TraceAction {
    pub fn name(self) -> &'static str {
        match self {
            TraceAction::PrunedQuick => "pruned-quick",
            TraceAction::PrunedDominated => "pruned-dominated",
            TraceAction::Expanded => "expanded",
            TraceAction::PerimeterBlocked => "perimeter-blocked",
        }
    }
}

/// One extraction of the enhanced search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    /// 1-based extraction counter.
    pub iteration: u64,
    pub direction: Direction,
    pub state: StateId,
    pub g: CostVector,
    pub f: CostVector,
    pub action: TraceAction,
    /// Incumbent primary cost after this iteration.
    pub upper_bound: Cost,
    /// Solution pairs stored after this iteration.
    pub solutions: usize,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} g={} f={} {} ub=",
            self.iteration,
            self.direction.name(),
            self.state,
            self.g,
            self.f,
            self.action.name()
        )?;
        if self.upper_bound == INFINITY {
            write!(f, "inf")?;
        } else {
            write!(f, "{}", self.upper_bound)?;
        }
        write!(f, " sols={}", self.solutions)
    }
}

#[derive(Clone, Debug)]
pub struct EnhancedOutcome {
    pub status: Status,
    pub solutions: SolutionSet,
    pub stats: SearchStats,
    /// States removed by network reduction.
    pub killed: Vec<StateId>,
    /// Final frontier lists; kept for validation.
    pub frontier: FrontierStore,
    /// Label arenas, forward then backward.
    pub pools: [LabelPool; 2],
}

impl EnhancedOutcome {
    pub fn cost(&self) -> Option<Cost> {
        (self.solutions.best() != INFINITY).then_some(self.solutions.best())
    }

    pub fn joined_vectors(&self) -> Vec<CostVector> {
        self.solutions.joined_vectors()
    }

    pub fn reconstruct_paths(&self, problem: &ProblemInstance<'_>) -> Result<Vec<SolutionPath>> {
        reconstruct_paths(&self.solutions, &self.pools, problem)
    }

    pub(crate) fn infeasible(init: &Initialization, n: usize, k: usize, stats: SearchStats) -> Self {
        EnhancedOutcome {
            status: Status::Infeasible,
            solutions: SolutionSet::new(),
            stats,
            killed: init.heuristics.killed(),
            frontier: FrontierStore::new(n),
            pools: [
                LabelPool::new(Direction::Forward, k),
                LabelPool::new(Direction::Backward, k),
            ],
        }
    }
}

/// Runs the initializer and the enhanced search.
pub fn solve_rcebda(problem: &ProblemInstance<'_>, config: &SearchConfig) -> Result<EnhancedOutcome> {
    solve_rcebda_traced(problem, config, |_| {})
}

/// As [`solve_rcebda`], reporting every extraction to `trace`.
pub fn solve_rcebda_traced<F: FnMut(&TraceEvent)>(
    problem: &ProblemInstance<'_>,
    config: &SearchConfig,
    mut trace: F,
) -> Result<EnhancedOutcome> {
    let t0 = Instant::now();
    let kappa = config.critical_index(problem.arity())?;
    let init = initialize(problem, config.reduce_network.unwrap_or(true));
    let mut stats = SearchStats {
        init_time: t0.elapsed(),
        ..SearchStats::default()
    };
    let graph = problem.graph();
    let n = graph.state_count();
    if init.infeasible {
        stats.elapsed = t0.elapsed();
        return Ok(EnhancedOutcome::infeasible(&init, n, problem.arity(), stats));
    }
    let h = &init.heuristics;
    let k = problem.arity();
    let deadline = Deadline::new(t0, config.timeout);
    let upper = problem.upper_bound();
    let mut bound = upper.clone();

    let mut pools = [
        LabelPool::new(Direction::Forward, k),
        LabelPool::new(Direction::Backward, k),
    ];
    let mut frontier = FrontierStore::new(n);
    let mut sols = SolutionSet::new();
    let mut queues: [BinaryHeap<QueueEntry>; 2] = [BinaryHeap::new(), BinaryHeap::new()];
    for (d, root) in [
        (Direction::Forward, problem.start()),
        (Direction::Backward, problem.goal()),
    ] {
        let f1 = h.table(d).get(root, 0);
        let id = pools[d.index()].push(root, &vec![0; k], None, None);
        queues[d.index()].push(QueueEntry::new(f1, &vec![0; k], root, id, config.tie_break));
    }

    let mut last_f1 = [0 as Cost; 2];
    let mut iteration = 0u64;
    let mut status = Status::Optimal;
    loop {
        let fronts = [queues[0].peek().map(|q| q.f1), queues[1].peek().map(|q| q.f1)];
        let Some(d) = pick_direction(fronts, config.direction_priority) else {
            break;
        };
        let x = queues[d.index()].pop().unwrap();
        let xg = CostVector::from_slice(pools[d.index()].g(x.label));
        iteration += 1;
        stats.direction_mut(d).extractions += 1;
        if deadline.expired(iteration) {
            status = Status::Timeout;
            break;
        }
        debug_assert!(x.f1 >= last_f1[d.index()], "f1 decreased in {} queue", d.name());
        last_f1[d.index()] = x.f1;
        if x.f1 > sols.best() {
            break;
        }

        let s = x.state;
        let mut emit = |action, sols: &SolutionSet| {
            trace(&TraceEvent {
                iteration,
                direction: d,
                state: s,
                g: xg.clone(),
                f: xg.add_slice(h.table(d).at(s)),
                action,
                upper_bound: sols.best(),
                solutions: sols.len(),
            });
        };

        if frontier.quick_check(d, s, &xg) {
            emit(TraceAction::PrunedQuick, &sols);
            continue;
        }
        stats.direction_mut(d).dominance_checks += 1;
        if frontier.is_dominated(d, s, &xg) {
            emit(TraceAction::PrunedDominated, &sols);
            continue;
        }
        frontier.insert_nondominated(
            d,
            s,
            Entry {
                label: x.label,
                g: xg.clone(),
            },
        );
        stats.direction_mut(d).matches +=
            match_label(d, x.label, &xg, frontier.at(d.opposite(), s), &upper, &mut sols);

        if !within_perimeter(&xg, kappa, &upper) {
            emit(TraceAction::PerimeterBlocked, &sols);
            continue;
        }
        stats.direction_mut(d).expansions += 1;
        bound.set(0, sols.best());
        let table = h.table(d);
        for (t, e) in graph.successors(d, s) {
            if !h.is_alive(t) {
                continue;
            }
            let g = xg.add(&graph.edge(e).cost);
            let f = g.add_slice(table.at(t));
            if f.primary() == INFINITY || !f.dominates(&bound) || frontier.quick_check(d, t, &g) {
                continue;
            }
            stats.direction_mut(d).generated += 1;
            let id = pools[d.index()].push(t, g.as_slice(), Some(x.label), Some(e));
            queues[d.index()].push(QueueEntry::new(f.primary(), g.as_slice(), t, id, config.tie_break));
        }
        emit(TraceAction::Expanded, &sols);
    }

    if status != Status::Timeout && sols.is_empty() {
        status = Status::Infeasible;
    }
    debug_assert!(frontier.validate().is_ok(), "{:?}", frontier.validate());
    stats.elapsed = t0.elapsed();
    Ok(EnhancedOutcome {
        status,
        solutions: sols,
        stats,
        killed: h.killed(),
        frontier,
        pools,
    })
}

/// A start-goal path with its cost recomputed from the graph's edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionPath {
    pub states: Vec<StateId>,
    pub cost: CostVector,
}

/// Follows parent references from `id` back to its root, returning the edges
/// in root-to-label order and the root state.
fn chain(pool: &LabelPool, id: LabelId) -> Result<(Vec<u32>, StateId)> {
    let mut edges = Vec::new();
    let mut cur = id;
    let mut steps = 0usize;
    loop {
        let label = pool
            .get(cur)
            .ok_or(RcspError::BrokenParentChain { label: cur })?;
        match (label.parent, label.edge) {
            (Some(p), Some(e)) => {
                edges.push(e);
                cur = p;
            }
            (None, None) => {
                if label.g.as_slice().iter().any(|&c| c != 0) {
                    return Err(RcspError::BrokenParentChain { label: cur });
                }
                edges.reverse();
                return Ok((edges, label.state));
            }
            _ => return Err(RcspError::BrokenParentChain { label: cur }),
        }
        steps += 1;
        if steps > pool.len() {
            return Err(RcspError::BrokenParentChain { label: id });
        }
    }
}

fn walk(graph: &MultiCostGraph, from: StateId, edges: &[u32], d: Direction) -> Result<Vec<StateId>> {
    let mut states = vec![from];
    let mut at = from;
    for &e in edges {
        let edge = graph.edge(e);
        let (tail, head) = match d {
            Direction::Forward => (edge.from, edge.to),
            Direction::Backward => (edge.to, edge.from),
        };
        if tail != at {
            return Err(RcspError::BrokenParentChain { label: e });
        }
        at = head;
        states.push(at);
    }
    Ok(states)
}

/// Turns every stored pair into an explicit start-goal state sequence. The
/// meeting state appears once; costs are summed from the graph's edges.
pub fn reconstruct_paths(
    sols: &SolutionSet,
    pools: &[LabelPool; 2],
    problem: &ProblemInstance<'_>,
) -> Result<Vec<SolutionPath>> {
    let graph = problem.graph();
    sols.pairs()
        .iter()
        .map(|pair| {
            let (fwd_edges, fwd_root) = chain(&pools[0], pair.forward)?;
            let (bwd_edges, bwd_root) = chain(&pools[1], pair.backward)?;
            if fwd_root != problem.start() {
                return Err(RcspError::BrokenParentChain {
                    label: pair.forward,
                });
            }
            if bwd_root != problem.goal() {
                return Err(RcspError::BrokenParentChain {
                    label: pair.backward,
                });
            }
            let mut states = walk(graph, fwd_root, &fwd_edges, Direction::Forward)?;
            let mut tail = walk(graph, bwd_root, &bwd_edges, Direction::Backward)?;
            tail.reverse();
            if states.last() != tail.first() {
                return Err(RcspError::BrokenParentChain {
                    label: pair.forward,
                });
            }
            states.extend_from_slice(&tail[1..]);
            let cost = fwd_edges
                .iter()
                .chain(&bwd_edges)
                .fold(CostVector::zero(problem.arity()), |acc, &e| {
                    acc.add(&graph.edge(e).cost)
                });
            Ok(SolutionPath { states, cost })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(f: LabelId, joined: [Cost; 3]) -> SolutionPair {
        SolutionPair {
            forward: f,
            backward: 0,
            joined: CostVector::from(joined),
        }
    }

    #[test]
    fn equal_cost_joins_are_filtered_by_resources() {
        let mut s = SolutionSet::new();
        assert!(s.offer(pair(1, [4, 2, 4])));
        assert!(s.offer(pair(2, [4, 4, 2])));
        assert_eq!(s.len(), 2);
        assert!(s.offer(pair(3, [4, 2, 2])));
        assert_eq!(s.joined_vectors(), vec![CostVector::from([4, 2, 2])]);
        assert!(!s.offer(pair(4, [4, 2, 2])));
        assert!(!s.offer(pair(5, [4, 3, 3])));
    }

    #[test]
    fn cheaper_join_resets_the_set() {
        let mut s = SolutionSet::new();
        s.offer(pair(1, [5, 1, 1]));
        s.offer(pair(2, [4, 9, 9]));
        assert_eq!(s.best(), 4);
        assert_eq!(s.len(), 1);
        assert!(!s.offer(pair(3, [5, 0, 0])));
    }

    #[test]
    fn match_with_empty_frontier_changes_nothing() {
        let mut s = SolutionSet::new();
        let offered = match_label(
            Direction::Forward,
            0,
            &CostVector::from([1, 1, 1]),
            &StateFrontier::default(),
            &CostVector::from([INFINITY, 4, 4]),
            &mut s,
        );
        assert_eq!(offered, 0);
        assert!(s.is_empty());
        assert_eq!(s.best(), INFINITY);
    }

    #[test]
    fn match_records_in_bounds_join() {
        let mut opposite = StateFrontier::default();
        opposite.insert_nondominated(Entry {
            label: 8,
            g: CostVector::from([1, 3, 3]),
        });
        let mut s = SolutionSet::new();
        match_label(
            Direction::Forward,
            4,
            &CostVector::from([3, 1, 1]),
            &opposite,
            &CostVector::from([INFINITY, 4, 4]),
            &mut s,
        );
        assert_eq!(s.best(), 4);
        assert_eq!(
            s.pairs(),
            &[SolutionPair {
                forward: 4,
                backward: 8,
                joined: CostVector::from([4, 4, 4])
            }]
        );
    }

    #[test]
    fn demoted_list_skipped_when_main_list_is_out_of_bounds() {
        let mut opposite = StateFrontier::default();
        opposite.insert_nondominated(Entry {
            label: 1,
            g: CostVector::from([1, 3, 3]),
        });
        opposite.insert_nondominated(Entry {
            label: 2,
            g: CostVector::from([2, 2, 2]),
        });
        assert_eq!(opposite.demoted().len(), 1);
        let mut s = SolutionSet::new();
        // 3 + 2 > 4 for the main member, so the demoted (1,3,3) is never tried.
        let offered = match_label(
            Direction::Backward,
            7,
            &CostVector::from([0, 3, 0]),
            &opposite,
            &CostVector::from([INFINITY, 4, 4]),
            &mut s,
        );
        assert_eq!(offered, 0);
    }
}
