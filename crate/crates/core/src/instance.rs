//! Problem instances and tightness-based budgets.

use crate::bounds::{one_to_all_bound, shortest_path_tree};
use crate::cost::{Cost, CostVector, INFINITY};
use crate::error::{RcspError, Result};
use crate::graph::{Direction, MultiCostGraph, StateId};

/// A point-to-point query: find a primary-cost optimal `start`-`goal` path
/// whose resource consumption respects `limits` (one per resource).
#[derive(Clone, Debug)]
pub struct ProblemInstance<'g> {
    graph: &'g MultiCostGraph,
    start: StateId,
    goal: StateId,
    limits: Vec<Cost>,
}

impl<'g> ProblemInstance<'g> {
    pub fn new(
        graph: &'g MultiCostGraph,
        start: StateId,
        goal: StateId,
        limits: Vec<Cost>,
    ) -> Result<Self> {
        let n = graph.state_count();
        for (name, s) in [("start", start), ("goal", goal)] {
            if s as usize >= n {
                return Err(RcspError::InvalidInstance(format!(
                    "{name} {s} outside 0..{n}"
                )));
            }
        }
        if limits.len() + 1 != graph.arity() {
            return Err(RcspError::InvalidInstance(format!(
                "graph has {} resources but {} limits were given",
                graph.arity() - 1,
                limits.len()
            )));
        }
        Ok(ProblemInstance {
            graph,
            start,
            goal,
            limits,
        })
    }

    #[inline]
    pub fn graph(&self) -> &'g MultiCostGraph {
        self.graph
    }

    #[inline]
    pub fn start(&self) -> StateId {
        self.start
    }

    #[inline]
    pub fn goal(&self) -> StateId {
        self.goal
    }

    #[inline]
    pub fn limits(&self) -> &[Cost] {
        &self.limits
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.graph.arity()
    }

    /// `(∞, R1, .., R(k-1))`.
    pub fn upper_bound(&self) -> CostVector {
        let mut v = Vec::with_capacity(self.arity());
        v.push(INFINITY);
        v.extend_from_slice(&self.limits);
        CostVector::from(v)
    }

    pub fn with_start_goal(&self, start: StateId, goal: StateId) -> Result<Self> {
        ProblemInstance::new(self.graph, start, goal, self.limits.clone())
    }
}

/// Constraint tightness as an exact fraction in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tightness {
    numerator: u64,
    denominator: u64,
}

impl Tightness {
    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 || numerator > denominator {
            return Err(RcspError::InvalidTightness {
                numerator,
                denominator,
            });
        }
        Ok(Tightness {
            numerator,
            denominator,
        })
    }

    pub fn percent(p: u64) -> Result<Self> {
        Tightness::new(p, 100)
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn as_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

/// Per-resource bounds on start-goal paths together with a tightness.
///
/// `cost_min[i]` and `cost_max[i]` refer to resource `i` (cost component `i + 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightnessSpec {
    pub delta: Tightness,
    pub cost_min: Vec<Cost>,
    pub cost_max: Vec<Cost>,
}

/// `floor(cost_min + delta * (cost_max - cost_min))` for resource `i`.
pub fn compute_budget(spec: &TightnessSpec, i: usize) -> Result<Cost> {
    let (lo, hi) = match (spec.cost_min.get(i), spec.cost_max.get(i)) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => {
            return Err(RcspError::InvalidInstance(format!(
                "no bounds for resource {i}"
            )))
        }
    };
    if lo > hi {
        return Err(RcspError::InvalidInstance(format!(
            "resource {i}: lower bound {lo} exceeds upper bound {hi}"
        )));
    }
    let Tightness {
        numerator,
        denominator,
    } = spec.delta;
    let span = (hi - lo) as u128 * numerator as u128 / denominator as u128;
    Ok(lo + span as Cost)
}

/// Resource bounds between a start and a goal: the per-resource minimum over
/// all paths, and the consumption of the unconstrained primary-cost optimal
/// path. `None` when the goal is unreachable.
pub fn resource_ranges(
    graph: &MultiCostGraph,
    start: StateId,
    goal: StateId,
) -> Option<(Vec<Cost>, Vec<Cost>)> {
    let k = graph.arity();
    let tree = shortest_path_tree(graph, None, start, 0, Direction::Forward);
    if tree.dist[goal as usize] == INFINITY {
        return None;
    }
    let mut cost_max = vec![0 as Cost; k - 1];
    let mut s = goal;
    while s != start {
        let e = graph.edge(tree.parent_edge[s as usize].expect("settled state has a parent"));
        for (acc, c) in cost_max.iter_mut().zip(e.cost.resources()) {
            *acc = acc.saturating_add(*c);
        }
        s = e.from;
    }
    let cost_min = (1..k)
        .map(|i| one_to_all_bound(graph, None, start, i, Direction::Backward)[goal as usize])
        .collect();
    Some((cost_min, cost_max))
}

/// Limits for every resource at tightness `delta`; `None` when unreachable.
pub fn budgets_for(
    graph: &MultiCostGraph,
    start: StateId,
    goal: StateId,
    delta: Tightness,
) -> Result<Option<Vec<Cost>>> {
    let Some((cost_min, cost_max)) = resource_ranges(graph, start, goal) else {
        return Ok(None);
    };
    let spec = TightnessSpec {
        delta,
        cost_min,
        cost_max,
    };
    (0..graph.arity() - 1)
        .map(|i| compute_budget(&spec, i))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}
