//! Lower-bound heuristics and resource-based network reduction.
//!
//! Every heuristic component is an exact single-criterion shortest-path
//! distance toward the target of its direction, so each table is consistent
//! and zero at the target. Reduction runs the `k` rounds from the last cost
//! component down to the primary one; after each resource round, states whose
//! two-sided bound exceeds that resource's limit are marked dead and later
//! rounds run on the surviving graph.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::cost::{Cost, INFINITY};
use crate::graph::{Direction, EdgeId, MultiCostGraph, StateId};
use crate::instance::ProblemInstance;

/// Per-state lower bounds for one search direction, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeuristicTable {
    k: usize,
    values: Vec<Cost>,
}

impl HeuristicTable {
    pub fn infinite(state_count: usize, k: usize) -> Self {
        HeuristicTable {
            k,
            values: vec![INFINITY; state_count * k],
        }
    }

    #[inline]
    pub fn at(&self, state: StateId) -> &[Cost] {
        let base = state as usize * self.k;
        &self.values[base..base + self.k]
    }

    #[inline]
    pub fn get(&self, state: StateId, index: usize) -> Cost {
        self.values[state as usize * self.k + index]
    }

    fn set_column(&mut self, index: usize, column: &[Cost]) {
        for (state, &value) in column.iter().enumerate() {
            self.values[state * self.k + index] = value;
        }
    }
}

/// Distances from a root plus the edge each state was settled through.
#[derive(Clone, Debug)]
pub struct ShortestPathTree {
    pub dist: Vec<Cost>,
    pub parent_edge: Vec<Option<EdgeId>>,
}

/// Dijkstra on cost component `index`, following the adjacency of `traverse`.
///
/// The queue is ordered by `(distance, state id)`. Among equal-distance
/// relaxations of an unsettled state the smaller predecessor id wins, so the
/// tree is fully deterministic.
pub fn shortest_path_tree(
    graph: &MultiCostGraph,
    alive: Option<&[bool]>,
    root: StateId,
    index: usize,
    traverse: Direction,
) -> ShortestPathTree {
    let n = graph.state_count();
    let is_alive = |s: StateId| alive.is_none_or(|a| a[s as usize]);
    let mut dist = vec![INFINITY; n];
    let mut parent_edge: Vec<Option<EdgeId>> = vec![None; n];
    let mut parent_state: Vec<StateId> = vec![StateId::MAX; n];
    let mut settled = vec![false; n];
    if !is_alive(root) {
        return ShortestPathTree { dist, parent_edge };
    }
    let mut heap = BinaryHeap::new();
    dist[root as usize] = 0;
    heap.push(Reverse((0 as Cost, root)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if settled[u as usize] {
            continue;
        }
        settled[u as usize] = true;
        for (v, e) in graph.successors(traverse, u) {
            if settled[v as usize] || !is_alive(v) {
                continue;
            }
            let nd = d.saturating_add(graph.edge(e).cost[index]);
            let slot = v as usize;
            if nd == INFINITY {
                continue;
            }
            if nd < dist[slot] || (nd == dist[slot] && u < parent_state[slot]) {
                if nd < dist[slot] {
                    heap.push(Reverse((nd, v)));
                }
                dist[slot] = nd;
                parent_edge[slot] = Some(e);
                parent_state[slot] = u;
            }
        }
    }
    ShortestPathTree { dist, parent_edge }
}

/// Exact minimum of cost component `index` between `root` and every state,
/// usable as the heuristic of search direction `direction` (whose target is
/// `root`). The search itself runs on the graph of the opposite direction.
pub fn one_to_all_bound(
    graph: &MultiCostGraph,
    alive: Option<&[bool]>,
    root: StateId,
    index: usize,
    direction: Direction,
) -> Vec<Cost> {
    shortest_path_tree(graph, alive, root, index, direction.opposite()).dist
}

/// Heuristic tables for both directions together with the surviving states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Heuristics {
    pub forward: HeuristicTable,
    pub backward: HeuristicTable,
    pub alive: Vec<bool>,
}

impl Heuristics {
    #[inline]
    pub fn table(&self, d: Direction) -> &HeuristicTable {
        match d {
            Direction::Forward => &self.forward,
            Direction::Backward => &self.backward,
        }
    }

    #[inline]
    pub fn is_alive(&self, s: StateId) -> bool {
        self.alive[s as usize]
    }

    pub fn killed(&self) -> Vec<StateId> {
        (0..self.alive.len() as StateId)
            .filter(|&s| !self.alive[s as usize])
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Initialization {
    pub heuristics: Heuristics,
    /// Set when start or goal was removed, or the goal cannot be reached.
    pub infeasible: bool,
}

/// Computes `h^f` and `h^b` with `k` rounds of one-to-all searches, running
/// from the last cost component to the primary one. With `reduce`, states
/// that cannot lie on any resource-feasible path are removed after every
/// resource round.
pub fn initialize(problem: &ProblemInstance<'_>, reduce: bool) -> Initialization {
    let graph = problem.graph();
    let n = graph.state_count();
    let k = graph.arity();
    let (start, goal) = (problem.start(), problem.goal());
    let limits = problem.limits();
    let mut h = Heuristics {
        forward: HeuristicTable::infinite(n, k),
        backward: HeuristicTable::infinite(n, k),
        alive: vec![true; n],
    };
    for index in (0..k).rev() {
        let to_goal = one_to_all_bound(graph, Some(&h.alive), goal, index, Direction::Forward);
        let from_start = one_to_all_bound(graph, Some(&h.alive), start, index, Direction::Backward);
        h.forward.set_column(index, &to_goal);
        h.backward.set_column(index, &from_start);
        if reduce && index >= 1 {
            let limit = limits[index - 1];
            for s in 0..n {
                if h.alive[s] && to_goal[s].saturating_add(from_start[s]) > limit {
                    h.alive[s] = false;
                }
            }
            if !h.alive[start as usize] || !h.alive[goal as usize] {
                return Initialization {
                    heuristics: h,
                    infeasible: true,
                };
            }
        }
    }
    let infeasible = h.forward.get(start, 0) == INFINITY;
    Initialization {
        heuristics: h,
        infeasible,
    }
}
