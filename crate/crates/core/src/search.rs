//! Configuration, statistics and queue ordering shared by all search variants.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use crate::cost::{Cost, CostVector};
use crate::error::{RcspError, Result};
use crate::graph::{Direction, StateId};
use crate::label::LabelId;

/// Extractions between two deadline checks.
pub(crate) const DEADLINE_STRIDE: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Optimal,
    Infeasible,
    Timeout,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Optimal => "optimal",
            Status::Infeasible => "infeasible",
            Status::Timeout => "timeout",
        }
    }
}

/// Order among labels with equal `f1` inside one queue.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Larger `g1` first.
    #[default]
    DeeperFirst,
    ShallowerFirst,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// 1-based cost index whose budget is split between the directions.
    /// Defaults to the last component.
    pub critical_resource: Option<usize>,
    pub tie_break: TieBreak,
    /// Direction extracted from when both queue fronts have equal `f1`.
    pub direction_priority: Direction,
    pub timeout: Option<Duration>,
    /// Resource-based network reduction during initialization. `None` uses the
    /// algorithm's default: off for the baseline, on for the enhanced search.
    pub reduce_network: Option<bool>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            critical_resource: None,
            tie_break: TieBreak::DeeperFirst,
            direction_priority: Direction::Forward,
            timeout: None,
            reduce_network: None,
        }
    }
}

impl SearchConfig {
    /// 0-based index of the critical resource for a `k`-component problem.
    pub fn critical_index(&self, k: usize) -> Result<usize> {
        let kappa = self.critical_resource.unwrap_or(k);
        if !(2..=k).contains(&kappa) {
            return Err(RcspError::InvalidInstance(format!(
                "critical resource {kappa} outside 2..={k}"
            )));
        }
        Ok(kappa - 1)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DirectionStats {
    pub extractions: u64,
    pub expansions: u64,
    pub generated: u64,
    pub dominance_checks: u64,
    pub matches: u64,
}

impl DirectionStats {
    fn merge(&mut self, other: &DirectionStats) {
        self.extractions += other.extractions;
        self.expansions += other.expansions;
        self.generated += other.generated;
        self.dominance_checks += other.dominance_checks;
        self.matches += other.matches;
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchStats {
    pub forward: DirectionStats,
    pub backward: DirectionStats,
    pub init_time: Duration,
    pub elapsed: Duration,
}

impl SearchStats {
    #[inline]
    pub fn direction_mut(&mut self, d: Direction) -> &mut DirectionStats {
        match d {
            Direction::Forward => &mut self.forward,
            Direction::Backward => &mut self.backward,
        }
    }

    pub fn direction(&self, d: Direction) -> &DirectionStats {
        match d {
            Direction::Forward => &self.forward,
            Direction::Backward => &self.backward,
        }
    }

    pub fn total(&self) -> DirectionStats {
        let mut t = self.forward.clone();
        t.merge(&self.backward);
        t
    }
}

/// Priority queue entry. `BinaryHeap` is a max-heap, so `Ord` is reversed:
/// the greatest entry has the smallest `f1`, then the preferred `g1`, then
/// the smaller state id, then the smaller resource sum, then the older label.
/// Among labels of one state with equal `g1`, a dominating label has the
/// smaller resource sum and is extracted first.
#[derive(Clone, Copy, Debug)]
pub(crate) struct QueueEntry {
    pub f1: Cost,
    depth_key: Cost,
    pub state: StateId,
    pub label: LabelId,
    resource_sum: Cost,
}

impl QueueEntry {
    pub fn new(f1: Cost, g: &[Cost], state: StateId, label: LabelId, tie: TieBreak) -> Self {
        let depth_key = match tie {
            TieBreak::DeeperFirst => Cost::MAX - g[0],
            TieBreak::ShallowerFirst => g[0],
        };
        QueueEntry {
            f1,
            depth_key,
            state,
            label,
            resource_sum: g[1..].iter().fold(0, |a: Cost, &c| a.saturating_add(c)),
        }
    }
}

impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f1
            .cmp(&self.f1)
            .then(other.depth_key.cmp(&self.depth_key))
            .then(other.state.cmp(&self.state))
            .then(other.resource_sum.cmp(&self.resource_sum))
            .then(other.label.cmp(&self.label))
    }
}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for QueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QueueEntry {}

/// Picks the direction whose queue front has the smaller `f1`.
#[inline]
pub(crate) fn pick_direction(
    fronts: [Option<Cost>; 2],
    priority: Direction,
) -> Option<Direction> {
    match fronts {
        [None, None] => None,
        [Some(_), None] => Some(Direction::Forward),
        [None, Some(_)] => Some(Direction::Backward),
        [Some(f), Some(b)] => Some(match f.cmp(&b) {
            Ordering::Less => Direction::Forward,
            Ordering::Greater => Direction::Backward,
            Ordering::Equal => priority,
        }),
    }
}

/// `2 * g_κ <= R_κ`, i.e. the label used at most half of the critical budget.
#[inline]
pub(crate) fn within_perimeter(g: &CostVector, kappa: usize, upper: &CostVector) -> bool {
    g[kappa].saturating_mul(2) <= upper[kappa]
}

/// Cooperative wall-clock budget.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Deadline(Option<Instant>);

impl Deadline {
    pub fn new(start: Instant, timeout: Option<Duration>) -> Self {
        Deadline(timeout.map(|t| start + t))
    }

    /// Checked only every [`DEADLINE_STRIDE`] extractions.
    #[inline]
    pub fn expired(&self, extractions: u64) -> bool {
        match self.0 {
            Some(at) if extractions.is_multiple_of(DEADLINE_STRIDE) => Instant::now() >= at,
            _ => false,
        }
    }
}
