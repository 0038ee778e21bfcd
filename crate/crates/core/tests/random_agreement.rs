use proptest::prelude::*;

use rcsp::bounds::initialize;
use rcsp::generate::{random_instance, RandomInstance, RandomSpec};
use rcsp::oracle::{enumerate_feasible, EnumerationMode};
use rcsp::{
    oracle_answer, solve_parallel, solve_rcbda, solve_rcebda, CostVector, Direction,
    SearchConfig, Status, TieBreak, INFINITY,
};

fn instance(seed: u64) -> RandomInstance {
    random_instance(seed, &RandomSpec::default()).unwrap()
}

/// Small costs make equal-cost optima common.
fn tie_heavy(seed: u64) -> RandomInstance {
    let spec = RandomSpec {
        max_cost: 2,
        density_tenths: 20..=40,
        ..RandomSpec::default()
    };
    random_instance(seed, &spec).unwrap()
}

fn config() -> impl Strategy<Value = SearchConfig> {
    (any::<bool>(), any::<bool>(), prop::option::of(2usize..=3)).prop_map(|(shallow, bwd, critical)| {
        SearchConfig {
            tie_break: if shallow { TieBreak::ShallowerFirst } else { TieBreak::DeeperFirst },
            direction_priority: if bwd { Direction::Backward } else { Direction::Forward },
            critical_resource: critical,
            ..SearchConfig::default()
        }
    })
}

fn check_against_oracle(inst: &RandomInstance, cfg: &SearchConfig) -> Result<(), TestCaseError> {
    let p = inst.problem();
    let o = oracle_answer(&p).unwrap();
    let e = solve_rcebda(&p, cfg).unwrap();
    let b = solve_rcbda(&p, cfg).unwrap();
    let par = solve_parallel(&p, cfg).unwrap();
    prop_assert_eq!(e.status, o.status);
    prop_assert_eq!(b.status, o.status);
    prop_assert_eq!(par.status, o.status);
    prop_assert_eq!(e.solutions.best(), o.cost);
    prop_assert_eq!(b.upper_bound, o.cost);
    prop_assert_eq!(e.joined_vectors(), o.vectors.clone());
    prop_assert_eq!(par.joined_vectors(), o.vectors);
    prop_assert!(e.frontier.validate().is_ok());
    prop_assert!(par.frontier.validate().is_ok());
    e.solutions.validate(&p.upper_bound()).map_err(TestCaseError::fail)?;
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn all_solvers_match_the_oracle(seed in any::<u64>(), cfg in config()) {
        check_against_oracle(&instance(seed), &cfg)?;
    }

    #[test]
    fn equal_cost_optima_are_all_found(seed in any::<u64>(), cfg in config()) {
        check_against_oracle(&tie_heavy(seed), &cfg)?;
    }

    #[test]
    fn reconstructed_paths_cost_what_was_joined(seed in any::<u64>()) {
        let inst = tie_heavy(seed);
        let p = inst.problem();
        let out = solve_rcebda(&p, &SearchConfig::default()).unwrap();
        let paths = out.reconstruct_paths(&p).unwrap();
        prop_assert_eq!(paths.len(), out.solutions.len());
        for (path, pair) in paths.iter().zip(out.solutions.pairs()) {
            prop_assert_eq!(&path.cost, &pair.joined);
            prop_assert_eq!(path.states.first(), Some(&p.start()));
            prop_assert_eq!(path.states.last(), Some(&p.goal()));
            for w in path.states.windows(2) {
                prop_assert!(p.graph().successors(Direction::Forward, w[0]).any(|(t, _)| t == w[1]));
            }
        }
    }

    #[test]
    fn heuristics_are_consistent_and_anchored(seed in any::<u64>(), reduce in any::<bool>()) {
        let inst = instance(seed);
        let p = inst.problem();
        let init = initialize(&p, reduce);
        prop_assume!(!init.infeasible);
        let h = &init.heuristics;
        let (f, b) = (h.table(Direction::Forward), h.table(Direction::Backward));
        for i in 0..p.arity() {
            prop_assert_eq!(f.get(p.goal(), i), 0);
            prop_assert_eq!(b.get(p.start(), i), 0);
        }
        for e in p.graph().edges() {
            if !(h.is_alive(e.from) && h.is_alive(e.to)) {
                continue;
            }
            for i in 0..p.arity() {
                let c = e.cost[i];
                prop_assert!(f.get(e.from, i) <= c.saturating_add(f.get(e.to, i)));
                prop_assert!(b.get(e.to, i) <= c.saturating_add(b.get(e.from, i)));
            }
        }
    }

    #[test]
    fn reduction_keeps_every_feasible_path(seed in any::<u64>()) {
        let inst = instance(seed);
        let p = inst.problem();
        let init = initialize(&p, true);
        let paths = enumerate_feasible(&p, EnumerationMode::Simple).unwrap();
        if !paths.is_empty() {
            prop_assert!(!init.infeasible);
        }
        for path in paths {
            for s in path.states {
                prop_assert!(init.heuristics.is_alive(s), "state {} killed", s);
            }
        }
    }

    #[test]
    fn parallel_result_is_repeatable(seed in any::<u64>()) {
        let inst = tie_heavy(seed);
        let p = inst.problem();
        let cfg = SearchConfig::default();
        let first = solve_parallel(&p, &cfg).unwrap();
        for _ in 0..3 {
            let again = solve_parallel(&p, &cfg).unwrap();
            prop_assert_eq!(again.status, first.status);
            prop_assert_eq!(again.joined_vectors(), first.joined_vectors());
        }
    }
}

#[test]
fn unreachable_goals_are_infeasible_everywhere() {
    let mut seen = 0;
    for seed in 0..400 {
        let inst = instance(seed);
        if inst.reachable {
            continue;
        }
        seen += 1;
        let p = inst.problem();
        let cfg = SearchConfig::default();
        assert_eq!(solve_rcebda(&p, &cfg).unwrap().status, Status::Infeasible);
        assert_eq!(solve_rcbda(&p, &cfg).unwrap().upper_bound, INFINITY);
        assert_eq!(solve_parallel(&p, &cfg).unwrap().status, Status::Infeasible);
    }
    assert!(seen > 0);
}

#[test]
fn simple_and_bounded_enumeration_agree_on_optima() {
    // With a positive resource on every edge a cycle never helps, so the
    // optimal non-dominated vectors agree.
    for seed in 0..150 {
        let inst = instance(seed);
        let p = inst.problem();
        let simple = oracle_answer(&p).unwrap();
        if simple.status != Status::Optimal || simple.cost > 25 {
            continue;
        }
        let bounded = enumerate_feasible(&p, EnumerationMode::Bounded { ceiling: simple.cost }).unwrap();
        let summary = rcsp::oracle::summarize(&bounded);
        assert_eq!(summary, simple, "seed {seed}");
    }
}

#[test]
fn an_instance_with_two_equal_cost_optima() {
    // Two parallel routes of equal primary cost with incomparable resources.
    use rcsp::{Edge, MultiCostGraph, ProblemInstance};
    let e = |from, to, c: [u64; 3]| Edge {
        from,
        to,
        cost: CostVector::from(c),
    };
    let g = MultiCostGraph::new(
        4,
        vec![
            e(0, 1, [1, 1, 3]),
            e(1, 3, [1, 1, 3]),
            e(0, 2, [1, 3, 1]),
            e(2, 3, [1, 3, 1]),
            e(0, 3, [1, 9, 9]),
        ],
    )
    .unwrap();
    let p = ProblemInstance::new(&g, 0, 3, vec![8, 8]).unwrap();
    let out = solve_rcebda(&p, &SearchConfig::default()).unwrap();
    assert_eq!(out.cost(), Some(2));
    assert_eq!(
        out.joined_vectors(),
        vec![CostVector::from([2, 2, 6]), CostVector::from([2, 6, 2])]
    );
    assert_eq!(out.joined_vectors(), oracle_answer(&p).unwrap().vectors);
}
