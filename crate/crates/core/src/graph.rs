//! Directed multi-cost graph with forward and reversed adjacency.

use crate::cost::CostVector;
use crate::error::{RcspError, Result};

pub type StateId = u32;
pub type EdgeId = u32;

/// Search direction. Forward search starts at `start` and follows edges as
/// given; backward search starts at `goal` on the reversed graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Forward, Direction::Backward];

    #[inline]
    pub fn opposite(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Direction::Forward => 0,
            Direction::Backward => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Forward => "fwd",
            Direction::Backward => "bwd",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: StateId,
    pub to: StateId,
    pub cost: CostVector,
}

/// Compressed adjacency: `targets[offsets[u]..offsets[u + 1]]` are the
/// successors of `u`, with `edges` holding the matching edge ids.
#[derive(Clone, Debug, Default)]
struct Adjacency {
    offsets: Vec<u32>,
    targets: Vec<StateId>,
    edges: Vec<EdgeId>,
}

impl Adjacency {
    fn build(state_count: usize, edges: &[Edge], reversed: bool) -> Self {
        let mut offsets = vec![0u32; state_count + 1];
        for e in edges {
            let tail = if reversed { e.to } else { e.from };
            offsets[tail as usize + 1] += 1;
        }
        for i in 0..state_count {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0; edges.len()];
        let mut ids = vec![0; edges.len()];
        // stable in edge order, so parallel arcs keep their relative order
        for (id, e) in edges.iter().enumerate() {
            let (tail, head) = if reversed { (e.to, e.from) } else { (e.from, e.to) };
            let slot = cursor[tail as usize] as usize;
            targets[slot] = head;
            ids[slot] = id as EdgeId;
            cursor[tail as usize] += 1;
        }
        Adjacency {
            offsets,
            targets,
            edges: ids,
        }
    }

    #[inline]
    fn range(&self, u: StateId) -> std::ops::Range<usize> {
        self.offsets[u as usize] as usize..self.offsets[u as usize + 1] as usize
    }
}

/// Immutable after construction, so it can be shared between search workers.
#[derive(Clone, Debug)]
pub struct MultiCostGraph {
    state_count: usize,
    k: usize,
    edges: Vec<Edge>,
    adjacency: [Adjacency; 2],
}

impl MultiCostGraph {
    pub fn new(state_count: usize, edges: Vec<Edge>) -> Result<Self> {
        if state_count > u32::MAX as usize || edges.len() > u32::MAX as usize {
            return Err(RcspError::InvalidGraph("graph too large".into()));
        }
        let k = edges.first().map_or(2, |e| e.cost.len());
        if k < 2 {
            return Err(RcspError::InvalidGraph(format!(
                "need at least 2 cost components, found {k}"
            )));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.from as usize >= state_count || e.to as usize >= state_count {
                return Err(RcspError::InvalidGraph(format!(
                    "edge {i} ({} -> {}) has an endpoint outside 0..{state_count}",
                    e.from, e.to
                )));
            }
            if e.cost.len() != k {
                return Err(RcspError::LengthMismatch {
                    expected: k,
                    found: e.cost.len(),
                });
            }
        }
        let adjacency = [
            Adjacency::build(state_count, &edges, false),
            Adjacency::build(state_count, &edges, true),
        ];
        Ok(MultiCostGraph {
            state_count,
            k,
            edges,
            adjacency,
        })
    }

    /// Builds a graph whose edge costs all have length `k`, even when there are no edges.
    pub fn with_arity(state_count: usize, k: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut g = Self::new(state_count, edges)?;
        if g.edges.is_empty() {
            if k < 2 {
                return Err(RcspError::InvalidGraph(format!(
                    "need at least 2 cost components, found {k}"
                )));
            }
            g.k = k;
        } else if g.k != k {
            return Err(RcspError::LengthMismatch {
                expected: k,
                found: g.k,
            });
        }
        Ok(g)
    }

    #[inline]
    pub fn state_count(&self) -> usize {
        self.state_count
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of cost components per edge.
    #[inline]
    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id as usize]
    }

    /// Successors of `u` in the graph of direction `d`, as `(head, edge id)`.
    #[inline]
    pub fn successors(
        &self,
        d: Direction,
        u: StateId,
    ) -> impl Iterator<Item = (StateId, EdgeId)> + '_ {
        let adj = &self.adjacency[d.index()];
        let r = adj.range(u);
        adj.targets[r.clone()]
            .iter()
            .copied()
            .zip(adj.edges[r].iter().copied())
    }

    pub fn out_degree(&self, u: StateId) -> usize {
        self.adjacency[0].range(u).len()
    }
}
