//! Brute-force ground truth for small instances.
//!
//! Enumerates every start-goal path by depth-first search. A partial path is
//! abandoned once some resource exceeds its limit; costs never decrease along
//! a path, so nothing feasible is lost.

use crate::cost::{Cost, CostVector, INFINITY};
use crate::error::{RcspError, Result};
use crate::graph::{Direction, StateId};
use crate::instance::ProblemInstance;
use crate::search::Status;

/// Maximum number of partial paths visited before giving up.
pub const ENUMERATION_LIMIT: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Never revisit a state.
    Simple,
    /// Allow cycles, cutting partial paths whose primary cost exceeds `ceiling`.
    Bounded { ceiling: Cost },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasiblePath {
    pub states: Vec<StateId>,
    pub cost: CostVector,
}

struct Dfs<'p, 'g> {
    problem: &'p ProblemInstance<'g>,
    mode: EnumerationMode,
    on_path: Vec<bool>,
    path: Vec<StateId>,
    visited: usize,
    found: Vec<FeasiblePath>,
}

impl Dfs<'_, '_> {
    fn visit(&mut self, s: StateId, g: CostVector) -> Result<()> {
        self.visited += 1;
        if self.visited > ENUMERATION_LIMIT {
            return Err(RcspError::EnumerationBudget {
                limit: ENUMERATION_LIMIT,
            });
        }
        self.path.push(s);
        self.on_path[s as usize] = true;
        let at_goal = s == self.problem.goal();
        if at_goal {
            self.found.push(FeasiblePath {
                states: self.path.clone(),
                cost: g.clone(),
            });
        }
        if !(at_goal && self.mode == EnumerationMode::Simple) {
            let graph = self.problem.graph();
            for (t, e) in graph.successors(Direction::Forward, s) {
                if self.mode == EnumerationMode::Simple && self.on_path[t as usize] {
                    continue;
                }
                let next = g.add(&graph.edge(e).cost);
                if next
                    .resources()
                    .iter()
                    .zip(self.problem.limits())
                    .any(|(c, r)| c > r)
                {
                    continue;
                }
                if let EnumerationMode::Bounded { ceiling } = self.mode {
                    if next.primary() > ceiling {
                        continue;
                    }
                }
                self.visit(t, next)?;
            }
        }
        self.path.pop();
        self.on_path[s as usize] = false;
        Ok(())
    }
}

/// All feasible start-goal paths under the cut rules of `mode`.
pub fn enumerate_feasible(
    problem: &ProblemInstance<'_>,
    mode: EnumerationMode,
) -> Result<Vec<FeasiblePath>> {
    let mut dfs = Dfs {
        problem,
        mode,
        on_path: vec![false; problem.graph().state_count()],
        path: Vec::new(),
        visited: 0,
        found: Vec::new(),
    };
    dfs.visit(problem.start(), CostVector::zero(problem.arity()))?;
    Ok(dfs.found)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleAnswer {
    pub status: Status,
    /// Optimal primary cost, `INFINITY` when infeasible.
    pub cost: Cost,
    /// Sorted, pairwise incomparable resource vectors among optimal paths.
    pub vectors: Vec<CostVector>,
}

/// Reduces feasible paths to the optimum and its non-dominated cost vectors.
pub fn summarize(paths: &[FeasiblePath]) -> OracleAnswer {
    let Some(best) = paths.iter().map(|p| p.cost.primary()).min() else {
        return OracleAnswer {
            status: Status::Infeasible,
            cost: INFINITY,
            vectors: Vec::new(),
        };
    };
    let mut optimal: Vec<CostVector> = paths
        .iter()
        .filter(|p| p.cost.primary() == best)
        .map(|p| p.cost.clone())
        .collect();
    optimal.sort();
    optimal.dedup();
    let vectors = optimal
        .iter()
        .filter(|v| {
            !optimal
                .iter()
                .any(|w| w != *v && w.truncated_dominates(v))
        })
        .cloned()
        .collect();
    OracleAnswer {
        status: Status::Optimal,
        cost: best,
        vectors,
    }
}

/// Simple-path oracle answer.
pub fn oracle_answer(problem: &ProblemInstance<'_>) -> Result<OracleAnswer> {
    enumerate_feasible(problem, EnumerationMode::Simple).map(|p| summarize(&p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, MultiCostGraph};

    fn line() -> MultiCostGraph {
        let e = |from, to, c: [Cost; 2]| Edge {
            from,
            to,
            cost: CostVector::from(c),
        };
        MultiCostGraph::new(3, vec![e(0, 1, [1, 1]), e(1, 2, [1, 1]), e(0, 2, [5, 1])]).unwrap()
    }

    #[test]
    fn start_equals_goal_gives_empty_path() {
        let g = line();
        let p = ProblemInstance::new(&g, 1, 1, vec![0]).unwrap();
        let found = enumerate_feasible(&p, EnumerationMode::Simple).unwrap();
        assert_eq!(
            found,
            vec![FeasiblePath {
                states: vec![1],
                cost: CostVector::zero(2)
            }]
        );
    }

    #[test]
    fn tight_limit_forces_the_direct_edge() {
        let g = line();
        let p = ProblemInstance::new(&g, 0, 2, vec![1]).unwrap();
        let a = oracle_answer(&p).unwrap();
        assert_eq!(a.cost, 5);
        assert_eq!(a.vectors, vec![CostVector::from([5, 1])]);
    }

    #[test]
    fn unreachable_goal_is_infeasible() {
        let g = line();
        let p = ProblemInstance::new(&g, 2, 0, vec![9]).unwrap();
        let a = oracle_answer(&p).unwrap();
        assert_eq!(a.status, Status::Infeasible);
        assert_eq!(a.cost, INFINITY);
        assert!(a.vectors.is_empty());
    }

    #[test]
    fn summary_drops_dominated_and_duplicate_vectors() {
        let fp = |c: [Cost; 3]| FeasiblePath {
            states: vec![],
            cost: CostVector::from(c),
        };
        let a = summarize(&[fp([4, 1, 3]), fp([4, 1, 3]), fp([4, 2, 3]), fp([4, 3, 1]), fp([5, 0, 0])]);
        assert_eq!(a.cost, 4);
        assert_eq!(a.vectors, vec![CostVector::from([4, 1, 3]), CostVector::from([4, 3, 1])]);
    }

    #[test]
    fn budget_is_enforced() {
        // Complete digraph on 12 states: far more than a million simple paths.
        let n = 12;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    edges.push(Edge {
                        from: u,
                        to: v,
                        cost: CostVector::from([1, 0]),
                    });
                }
            }
        }
        let g = MultiCostGraph::new(n as usize, edges).unwrap();
        let p = ProblemInstance::new(&g, 0, 1, vec![0]).unwrap();
        assert!(matches!(
            oracle_answer(&p),
            Err(RcspError::EnumerationBudget { .. })
        ));
    }
}
