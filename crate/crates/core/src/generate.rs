//! Seeded instance generators: small random digraphs for exhaustive
//! cross-checking and 4-connected grids for benchmarking.
//!
//! Every generator draws from `ChaCha8Rng::seed_from_u64(seed)`, so a seed
//! fully determines its output across platforms.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::{Cost, CostVector};
use crate::bench::{generate_records, InstanceRecord};
use crate::error::Result;
use crate::graph::{Edge, MultiCostGraph, StateId};
use crate::instance::{budgets_for, ProblemInstance, Tightness};

pub const DELTAS_PCT: [u64; 5] = [10, 30, 50, 70, 90];

/// Parameters of [`random_instance`].
#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub states: std::ops::RangeInclusive<usize>,
    /// Edges per state, in tenths.
    pub density_tenths: std::ops::RangeInclusive<usize>,
    pub max_cost: Cost,
    pub arities: Vec<usize>,
    pub deltas_pct: Vec<u64>,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            states: 6..=14,
            density_tenths: 15..=30,
            max_cost: 10,
            arities: vec![3, 4],
            deltas_pct: DELTAS_PCT.to_vec(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub seed: u64,
    pub graph: MultiCostGraph,
    pub start: StateId,
    pub goal: StateId,
    pub delta_pct: u64,
    pub limits: Vec<Cost>,
    /// False when the goal cannot be reached; limits are then arbitrary.
    pub reachable: bool,
}

impl RandomInstance {
    pub fn problem(&self) -> ProblemInstance<'_> {
        ProblemInstance::new(&self.graph, self.start, self.goal, self.limits.clone())
            .expect("generated instance is valid")
    }
}

/// Random cost vector with components in `0..=max` and at least one
/// strictly positive resource.
fn random_cost(rng: &mut ChaCha8Rng, k: usize, max: Cost) -> CostVector {
    let mut c: Vec<Cost> = (0..k).map(|_| rng.random_range(0..=max)).collect();
    if c[1..].iter().all(|&x| x == 0) {
        let i = rng.random_range(1..k);
        c[i] = rng.random_range(1..=max.max(1));
    }
    CostVector::from(c)
}

/// Small random digraph with a start, a goal and budgets set by a tightness
/// drawn from `spec.deltas_pct`. No self-loops; parallel arcs may occur.
pub fn random_instance(seed: u64, spec: &RandomSpec) -> Result<RandomInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(spec.states.clone());
    let k = *spec.arities.choose(&mut rng).expect("at least one arity");
    let m = n * rng.random_range(spec.density_tenths.clone()) / 10;
    let edges = (0..m)
        .map(|_| {
            let from = rng.random_range(0..n as StateId);
            let mut to = rng.random_range(0..n as StateId - 1);
            if to >= from {
                to += 1;
            }
            Edge {
                from,
                to,
                cost: random_cost(&mut rng, k, spec.max_cost),
            }
        })
        .collect();
    let graph = MultiCostGraph::with_arity(n, k, edges)?;
    let start = rng.random_range(0..n as StateId);
    let mut goal = rng.random_range(0..n as StateId - 1);
    if goal >= start {
        goal += 1;
    }
    let delta_pct = *spec.deltas_pct.choose(&mut rng).expect("at least one tightness");
    let (limits, reachable) =
        match budgets_for(&graph, start, goal, Tightness::percent(delta_pct)?)? {
            Some(l) => (l, true),
            None => ((1..k).map(|_| rng.random_range(0..=3 * spec.max_cost)).collect(), false),
        };
    Ok(RandomInstance {
        seed,
        graph,
        start,
        goal,
        delta_pct,
        limits,
        reachable,
    })
}

/// `width x height` grid, 4-connected, with an arc in each direction between
/// neighbours. Every component of every arc is drawn from `1..=max_cost`.
/// State `(x, y)` has id `y * width + x`.
pub fn grid_graph(width: usize, height: usize, k: usize, max_cost: Cost, seed: u64) -> Result<MultiCostGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = |x: usize, y: usize| (y * width + x) as StateId;
    let mut edges = Vec::with_capacity(4 * width * height);
    let mut arc = |rng: &mut ChaCha8Rng, from, to| {
        let cost: Vec<Cost> = (0..k).map(|_| rng.random_range(1..=max_cost)).collect();
        edges.push(Edge {
            from,
            to,
            cost: CostVector::from(cost),
        });
    };
    for y in 0..height {
        for x in 0..width {
            if x + 1 < width {
                arc(&mut rng, id(x, y), id(x + 1, y));
                arc(&mut rng, id(x + 1, y), id(x, y));
            }
            if y + 1 < height {
                arc(&mut rng, id(x, y), id(x, y + 1));
                arc(&mut rng, id(x, y + 1), id(x, y));
            }
        }
    }
    MultiCostGraph::with_arity(width * height, k, edges)
}

/// `count` distinct random `(start, goal)` pairs with `start != goal`.
pub fn random_pairs(n: usize, count: usize, seed: u64) -> Vec<(StateId, StateId)> {
    assert!(n >= 2, "need at least two states");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(count);
    while pairs.len() < count {
        let s = rng.random_range(0..n as StateId);
        let t = rng.random_range(0..n as StateId);
        if s != t && !pairs.contains(&(s, t)) {
            pairs.push((s, t));
        }
    }
    pairs
}

/// `count` distinct random pairs on a `width x height` grid whose Manhattan
/// distance lies in `distance`.
pub fn grid_pairs(
    width: usize,
    height: usize,
    count: usize,
    distance: std::ops::RangeInclusive<usize>,
    seed: u64,
) -> Vec<(StateId, StateId)> {
    assert!(*distance.start() >= 1 && *distance.start() <= width + height - 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(count);
    while pairs.len() < count {
        let (sx, sy) = (rng.random_range(0..width), rng.random_range(0..height));
        let (tx, ty) = (rng.random_range(0..width), rng.random_range(0..height));
        let pair = ((sy * width + sx) as StateId, (ty * width + tx) as StateId);
        if distance.contains(&(sx.abs_diff(tx) + sy.abs_diff(ty))) && !pairs.contains(&pair) {
            pairs.push(pair);
        }
    }
    pairs
}

/// The grid benchmark suite: a 150 x 150 grid with three cost components
/// drawn from `1..=10`, six pairs between 40 and 100 steps apart, each at
/// every tightness in [`DELTAS_PCT`].
pub fn grid_suite() -> Result<(MultiCostGraph, Vec<InstanceRecord>)> {
    let graph = grid_graph(150, 150, 3, 10, 1)?;
    let pairs = grid_pairs(150, 150, 6, 40..=100, 2);
    let records = generate_records(&graph, &pairs, &DELTAS_PCT)?;
    Ok((graph, records))
}
