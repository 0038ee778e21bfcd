use std::fs::File;
use std::io::BufReader;

use rcsp::bounds::initialize;
use rcsp::enhanced::{solve_rcebda_traced, TraceAction, TraceEvent};
use rcsp::io::read_edge_list;
use rcsp::oracle::{enumerate_feasible, EnumerationMode};
use rcsp::{
    oracle_answer, solve_parallel, solve_rcbda, solve_rcebda, CostVector, Direction,
    MultiCostGraph, ProblemInstance, SearchConfig, Status, INFINITY,
};

fn seven_state() -> MultiCostGraph {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/seven_state.txt");
    read_edge_list(BufReader::new(File::open(path).unwrap())).unwrap()
}

fn v(c: [u64; 3]) -> CostVector {
    CostVector::from(c)
}

#[test]
fn trace_of_the_first_six_extractions() {
    let g = seven_state();
    let p = ProblemInstance::new(&g, 0, 6, vec![4, 4]).unwrap();
    let mut events: Vec<TraceEvent> = Vec::new();
    let out = solve_rcebda_traced(&p, &SearchConfig::default(), |e| events.push(e.clone())).unwrap();

    use Direction::{Backward as B, Forward as F};
    use TraceAction::{Expanded, PerimeterBlocked};
    let expected = [
        (F, 0, [0, 0, 0], [3, 3, 3], Expanded),
        (F, 1, [1, 1, 1], [3, 4, 4], Expanded),
        (F, 3, [2, 2, 2], [3, 4, 4], Expanded),
        (B, 6, [0, 0, 0], [3, 3, 3], Expanded),
        (B, 3, [1, 3, 3], [3, 4, 4], PerimeterBlocked),
        (F, 3, [3, 1, 1], [4, 3, 3], Expanded),
    ];
    for (i, (e, (d, s, g_, f, action))) in events.iter().zip(expected).enumerate() {
        assert_eq!(e.iteration, i as u64 + 1);
        assert_eq!((e.direction, e.state, &e.g, &e.f, e.action), (d, s, &v(g_), &v(f), action), "iteration {}", i + 1);
    }
    for e in &events[..5] {
        assert_eq!((e.upper_bound, e.solutions), (INFINITY, 0));
    }
    assert_eq!((events[5].upper_bound, events[5].solutions), (4, 1));
    assert_eq!(out.status, Status::Optimal);
    assert_eq!(out.joined_vectors(), vec![v([4, 4, 4])]);
    assert_eq!(out.killed, vec![2, 5]);
    out.frontier.validate().unwrap();

    // At the meeting state the forward list holds (3,1,1); (2,2,2) was demoted.
    let at3 = out.frontier.at(Direction::Forward, 3);
    assert_eq!(at3.main().iter().map(|e| &e.g).collect::<Vec<_>>(), vec![&v([3, 1, 1])]);
    assert_eq!(at3.demoted().iter().map(|e| &e.g).collect::<Vec<_>>(), vec![&v([2, 2, 2])]);
}

#[test]
fn reduction_kills_the_two_out_of_bounds_states() {
    let g = seven_state();
    let p = ProblemInstance::new(&g, 0, 6, vec![4, 4]).unwrap();
    let init = initialize(&p, true);
    assert!(!init.infeasible);
    assert_eq!(init.heuristics.killed(), vec![2, 5]);
    assert_eq!(init.heuristics.table(Direction::Forward).at(0), &[3, 3, 3]);
}

#[test]
fn path_reconstruction() {
    let g = seven_state();
    let p = ProblemInstance::new(&g, 0, 6, vec![4, 4]).unwrap();
    let out = solve_rcebda(&p, &SearchConfig::default()).unwrap();
    let paths = out.reconstruct_paths(&p).unwrap();
    assert_eq!(paths.len(), 1);
    assert_eq!(paths[0].states, vec![0, 3, 6]);
    assert_eq!(paths[0].cost, v([4, 4, 4]));
}

#[test]
fn answers_for_other_limits() {
    let g = seven_state();
    let cfg = SearchConfig::default();
    for (limits, cost, vector, path) in [
        (vec![5, 5], 3, [3, 5, 5], vec![0, 1, 3, 6]),
        (vec![3, 3], 6, [6, 3, 3], vec![0, 3, 4, 6]),
    ] {
        let p = ProblemInstance::new(&g, 0, 6, limits).unwrap();
        let e = solve_rcebda(&p, &cfg).unwrap();
        assert_eq!(e.cost(), Some(cost));
        assert_eq!(e.joined_vectors(), vec![v(vector)]);
        assert_eq!(e.reconstruct_paths(&p).unwrap()[0].states, path);
        assert_eq!(solve_rcbda(&p, &cfg).unwrap().cost(), Some(cost));
        assert_eq!(solve_parallel(&p, &cfg).unwrap().joined_vectors(), vec![v(vector)]);
    }
}

#[test]
fn baseline_and_parallel_agree() {
    let g = seven_state();
    let p = ProblemInstance::new(&g, 0, 6, vec![4, 4]).unwrap();
    let cfg = SearchConfig::default();
    let b = solve_rcbda(&p, &cfg).unwrap();
    assert_eq!((b.status, b.cost()), (Status::Optimal, Some(4)));
    let par = solve_parallel(&p, &cfg).unwrap();
    assert_eq!(par.status, Status::Optimal);
    assert_eq!(par.joined_vectors(), vec![v([4, 4, 4])]);
    par.frontier.validate().unwrap();
}

#[test]
fn oracle_on_the_example() {
    let g = seven_state();
    let p = ProblemInstance::new(&g, 0, 6, vec![4, 4]).unwrap();
    let mut found: Vec<_> = enumerate_feasible(&p, EnumerationMode::Simple)
        .unwrap()
        .into_iter()
        .map(|f| (f.states, f.cost))
        .collect();
    found.sort();
    assert_eq!(
        found,
        vec![
            (vec![0, 1, 3, 4, 6], v([5, 4, 4])),
            (vec![0, 3, 4, 6], v([6, 3, 3])),
            (vec![0, 3, 6], v([4, 4, 4])),
        ]
    );
    let a = oracle_answer(&p).unwrap();
    assert_eq!((a.status, a.cost, a.vectors), (Status::Optimal, 4, vec![v([4, 4, 4])]));

    let p = ProblemInstance::new(&g, 0, 6, vec![0, 0]).unwrap();
    assert!(enumerate_feasible(&p, EnumerationMode::Simple).unwrap().is_empty());

    // The graph is acyclic, so allowing cycles changes nothing.
    let p = ProblemInstance::new(&g, 0, 6, vec![9, 9]).unwrap();
    let mut simple = enumerate_feasible(&p, EnumerationMode::Simple).unwrap();
    let mut bounded = enumerate_feasible(&p, EnumerationMode::Bounded { ceiling: 100 }).unwrap();
    simple.sort_by(|a, b| a.states.cmp(&b.states));
    bounded.sort_by(|a, b| a.states.cmp(&b.states));
    assert_eq!(simple, bounded);
    assert_eq!(simple.len(), 9);
}

#[test]
fn reversed_query_is_infeasible() {
    let g = seven_state();
    let p = ProblemInstance::new(&g, 6, 0, vec![9, 9]).unwrap();
    let cfg = SearchConfig::default();
    assert_eq!(solve_rcebda(&p, &cfg).unwrap().status, Status::Infeasible);
    assert_eq!(solve_rcbda(&p, &cfg).unwrap().status, Status::Infeasible);
    assert_eq!(solve_parallel(&p, &cfg).unwrap().status, Status::Infeasible);
    let a = oracle_answer(&p).unwrap();
    assert_eq!((a.status, a.cost), (Status::Infeasible, INFINITY));
}

#[test]
fn start_equals_goal() {
    let g = seven_state();
    let p = ProblemInstance::new(&g, 3, 3, vec![0, 0]).unwrap();
    let cfg = SearchConfig::default();
    let e = solve_rcebda(&p, &cfg).unwrap();
    assert_eq!(e.cost(), Some(0));
    assert_eq!(e.reconstruct_paths(&p).unwrap()[0].states, vec![3]);
    assert_eq!(solve_rcbda(&p, &cfg).unwrap().cost(), Some(0));
    assert_eq!(oracle_answer(&p).unwrap().cost, 0);
}
