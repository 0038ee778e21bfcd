//! Search labels and the per-state frontier lists used for dominance pruning
//! and path matching.
//!
//! Each `(direction, state)` keeps two lists. The main list holds labels whose
//! resource vectors are mutually non-dominated, in extraction order. When a
//! new label truncated-dominates members of the main list, those members move
//! to the demoted list: they can no longer prune anything, but they remain
//! available for joining with the opposite direction.

use crate::cost::{Cost, CostVector};
use crate::graph::{Direction, EdgeId, StateId};

pub type LabelId = u32;

/// A partial path from the initial state of its direction to `state`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Label {
    pub state: StateId,
    pub g: CostVector,
    pub parent: Option<LabelId>,
    /// Edge used to reach `state` from the parent's state.
    pub edge: Option<EdgeId>,
}

const NONE: u32 = u32::MAX;

/// Append-only arena of labels generated by one search direction, stored
/// column-wise with the cost vectors packed into one buffer.
#[derive(Clone, Debug)]
pub struct LabelPool {
    direction: Direction,
    k: usize,
    states: Vec<StateId>,
    parents: Vec<LabelId>,
    edges: Vec<EdgeId>,
    costs: Vec<Cost>,
}

impl LabelPool {
    pub fn new(direction: Direction, k: usize) -> Self {
        LabelPool {
            direction,
            k,
            states: Vec::new(),
            parents: Vec::new(),
            edges: Vec::new(),
            costs: Vec::new(),
        }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn push(
        &mut self,
        state: StateId,
        g: &[Cost],
        parent: Option<LabelId>,
        edge: Option<EdgeId>,
    ) -> LabelId {
        debug_assert_eq!(g.len(), self.k);
        let id = self.states.len() as LabelId;
        self.states.push(state);
        self.parents.push(parent.unwrap_or(NONE));
        self.edges.push(edge.unwrap_or(NONE));
        self.costs.extend_from_slice(g);
        id
    }

    /// Cost vector of label `id`. Panics if `id` is out of range.
    #[inline]
    pub fn g(&self, id: LabelId) -> &[Cost] {
        let i = id as usize * self.k;
        &self.costs[i..i + self.k]
    }

    pub fn get(&self, id: LabelId) -> Option<Label> {
        let i = id as usize;
        let state = *self.states.get(i)?;
        let opt = |x: u32| (x != NONE).then_some(x);
        Some(Label {
            state,
            g: CostVector::from_slice(self.g(id)),
            parent: opt(self.parents[i]),
            edge: opt(self.edges[i]),
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// A frontier member: the label handle plus a copy of its `g` vector so the
/// opposite direction can scan it without touching this direction's pool.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub label: LabelId,
    pub g: CostVector,
}

/// True iff some member truncated-dominates `g`.
#[inline]
pub fn is_dominated(g: &CostVector, entries: &[Entry]) -> bool {
    entries.iter().any(|y| y.g.truncated_dominates(g))
}

#[derive(Clone, Debug, Default)]
pub struct StateFrontier {
    main: Vec<Entry>,
    demoted: Vec<Entry>,
    last_primary: Cost,
    /// Largest primary cost in `demoted`.
    demoted_primary: Cost,
}

impl StateFrontier {
    #[inline]
    pub fn main(&self) -> &[Entry] {
        &self.main
    }

    #[inline]
    pub fn demoted(&self) -> &[Entry] {
        &self.demoted
    }

    /// Compares `g` against the most recently inserted main-list member only.
    #[inline]
    pub fn quick_check(&self, g: &CostVector) -> bool {
        self.main
            .last()
            .is_some_and(|z| z.g.truncated_dominates(g))
    }

    #[inline]
    pub fn is_dominated(&self, g: &CostVector) -> bool {
        is_dominated(g, &self.main)
    }

    /// Demotes every main-list member whose resources `x` dominates, then
    /// appends `x`. Members that `x` dominates in full (possible only when
    /// their primary costs are equal) are dropped from both lists instead:
    /// every join they could form is matched at least as well by `x`.
    /// The caller must have checked that `x` is not dominated.
    pub fn insert_nondominated(&mut self, x: Entry) {
        debug_assert!(!self.is_dominated(&x.g), "inserting a dominated label");
        debug_assert!(
            x.g.primary() >= self.last_primary,
            "primary cost decreased within one frontier: {} after {}",
            x.g.primary(),
            self.last_primary
        );
        if !self.demoted.is_empty() && x.g.primary() <= self.demoted_primary {
            self.demoted.retain(|d| !x.g.dominates(&d.g));
        }
        let mut i = 0;
        while i < self.main.len() {
            if x.g.truncated_dominates(&self.main[i].g) {
                let y = self.main.remove(i);
                if x.g.dominates(&y.g) {
                    continue;
                }
                let at = self
                    .demoted
                    .partition_point(|d| d.g.cmp_resources(&y.g).is_lt());
                self.demoted_primary = self.demoted_primary.max(y.g.primary());
                self.demoted.insert(at, y);
            } else {
                i += 1;
            }
        }
        self.last_primary = x.g.primary();
        self.main.push(x);
    }

    /// Checks the frontier invariants, describing the first violation found.
    pub fn validate(&self) -> Result<(), String> {
        for (i, a) in self.main.iter().enumerate() {
            for (j, b) in self.main.iter().enumerate() {
                if i != j && a.g.truncated_dominates(&b.g) {
                    return Err(format!("main list members {} and {} are comparable", a.g, b.g));
                }
            }
        }
        for w in self.main.windows(2) {
            if w[0].g.primary() > w[1].g.primary() {
                return Err(format!("main list out of primary order: {} before {}", w[0].g, w[1].g));
            }
        }
        for d in &self.demoted {
            if !self.main.iter().any(|m| m.g.truncated_dominates(&d.g)) {
                return Err(format!("demoted member {} is not covered", d.g));
            }
        }
        for w in self.demoted.windows(2) {
            if w[0].g.cmp_resources(&w[1].g).is_gt() {
                return Err("demoted list is not in lexicographic order".into());
            }
        }
        let all: Vec<&Entry> = self.main.iter().chain(&self.demoted).collect();
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                if i != j && a.g.dominates(&b.g) {
                    return Err(format!("{} weakly dominates {}", a.g, b.g));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn len(&self) -> usize {
        self.main.len() + self.demoted.len()
    }
}

/// Frontier lists for every state in both directions.
#[derive(Clone, Debug)]
pub struct FrontierStore {
    lists: [Vec<StateFrontier>; 2],
}

impl FrontierStore {
    pub fn new(state_count: usize) -> Self {
        FrontierStore {
            lists: [
                vec![StateFrontier::default(); state_count],
                vec![StateFrontier::default(); state_count],
            ],
        }
    }

    pub(crate) fn from_lists(forward: Vec<StateFrontier>, backward: Vec<StateFrontier>) -> Self {
        FrontierStore {
            lists: [forward, backward],
        }
    }

    #[inline]
    pub fn at(&self, d: Direction, state: StateId) -> &StateFrontier {
        &self.lists[d.index()][state as usize]
    }

    #[inline]
    pub fn quick_check(&self, d: Direction, state: StateId, g: &CostVector) -> bool {
        self.at(d, state).quick_check(g)
    }

    #[inline]
    pub fn is_dominated(&self, d: Direction, state: StateId, g: &CostVector) -> bool {
        self.at(d, state).is_dominated(g)
    }

    pub fn insert_nondominated(&mut self, d: Direction, state: StateId, x: Entry) {
        self.lists[d.index()][state as usize].insert_nondominated(x);
    }

    /// Validates every state's lists in both directions.
    pub fn validate(&self) -> Result<(), String> {
        for d in Direction::BOTH {
            for (s, lists) in self.lists[d.index()].iter().enumerate() {
                lists
                    .validate()
                    .map_err(|e| format!("{} state {s}: {e}", d.name()))?;
            }
        }
        Ok(())
    }

    /// Total number of stored labels.
    pub fn stored(&self) -> usize {
        self.lists.iter().flatten().map(StateFrontier::len).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn entry(label: LabelId, g: &[Cost]) -> Entry {
        Entry {
            label,
            g: CostVector::from_slice(g),
        }
    }

    #[test]
    fn pool_round_trip() {
        let mut pool = LabelPool::new(Direction::Backward, 3);
        let a = pool.push(6, &[0, 0, 0], None, None);
        let b = pool.push(3, &[1, 3, 3], Some(a), Some(5));
        assert_eq!(pool.g(b), &[1, 3, 3]);
        assert_eq!(
            pool.get(b),
            Some(Label {
                state: 3,
                g: CostVector::from([1, 3, 3]),
                parent: Some(a),
                edge: Some(5)
            })
        );
        assert_eq!(pool.get(a).unwrap().parent, None);
        assert_eq!(pool.get(2), None);
        assert_eq!(pool.direction(), Direction::Backward);
    }

    #[test]
    fn is_dominated_cases() {
        let x4 = entry(4, &[3, 1, 1]);
        assert!(!is_dominated(&x4.g, &[entry(5, &[2, 2, 2])]));
        assert!(!is_dominated(&x4.g, &[]));
        assert!(is_dominated(&x4.g, &[entry(9, &[3, 1, 1])]));
    }

    #[test]
    fn quick_check_looks_at_last_member() {
        let mut f = StateFrontier::default();
        assert!(!f.quick_check(&CostVector::from([2, 1, 1])));
        f.insert_nondominated(entry(0, &[1, 1, 1]));
        assert!(f.quick_check(&CostVector::from([2, 1, 1])));

        let mut f = StateFrontier::default();
        f.insert_nondominated(entry(5, &[2, 2, 2]));
        assert!(!f.quick_check(&CostVector::from([3, 1, 1])));
    }

    #[test]
    fn insertion_demotes_dominated_members() {
        let mut f = StateFrontier::default();
        f.insert_nondominated(entry(5, &[2, 2, 2]));
        f.insert_nondominated(entry(4, &[3, 1, 1]));
        assert_eq!(f.main(), &[entry(4, &[3, 1, 1])]);
        assert_eq!(f.demoted(), &[entry(5, &[2, 2, 2])]);
        f.validate().unwrap();
    }

    #[test]
    fn fully_dominated_members_are_dropped() {
        let mut f = StateFrontier::default();
        f.insert_nondominated(entry(0, &[4, 1, 9]));
        f.insert_nondominated(entry(1, &[5, 3, 3]));
        f.insert_nondominated(entry(2, &[5, 1, 1]));
        assert_eq!(f.main(), &[entry(2, &[5, 1, 1])]);
        assert_eq!(f.demoted(), &[entry(0, &[4, 1, 9])]);
        f.validate().unwrap();

        // A late equal-cost arrival also clears a demoted member.
        f.insert_nondominated(entry(3, &[5, 1, 0]));
        f.validate().unwrap();
    }

    #[test]
    fn incomparable_members_stay() {
        let mut f = StateFrontier::default();
        f.insert_nondominated(entry(0, &[5, 1, 9]));
        f.insert_nondominated(entry(1, &[5, 9, 1]));
        f.insert_nondominated(entry(2, &[6, 2, 2]));
        assert_eq!(f.main().len(), 3);
        assert!(f.demoted().is_empty());
        f.validate().unwrap();
    }

    #[test]
    fn validator_flags_violations() {
        let mut f = StateFrontier::default();
        f.main.push(entry(0, &[1, 1, 1]));
        f.main.push(entry(1, &[2, 2, 2]));
        assert!(f.validate().is_err());

        let mut f = StateFrontier::default();
        f.main.push(entry(0, &[1, 1, 5]));
        f.demoted.push(entry(1, &[0, 5, 1]));
        assert!(f.validate().is_err());
    }

    proptest! {
        // Feeding labels in non-decreasing primary order through the
        // extraction-time protocol keeps every invariant.
        #[test]
        fn protocol_preserves_invariants(
            mut raw in prop::collection::vec((0u64..6, 0u64..6, 0u64..6), 0..40)
        ) {
            // Only the primary cost is ordered; equal-primary labels may
            // arrive in any resource order.
            raw.sort_by_key(|&(a, _, _)| a);
            let mut f = StateFrontier::default();
            for (i, (a, b, c)) in raw.into_iter().enumerate() {
                let g = CostVector::from([a, b, c]);
                let quick = f.quick_check(&g);
                let full = f.is_dominated(&g);
                prop_assert!(!quick || full);
                if !full {
                    f.insert_nondominated(Entry { label: i as LabelId, g });
                }
                prop_assert!(f.validate().is_ok(), "{:?}", f.validate());
            }
        }
    }
}
