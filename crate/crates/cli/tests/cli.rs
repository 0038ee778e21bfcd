use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/seven_state.txt")
}

fn rcsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rcsp"))
        .args(args)
        .env_remove("RCSP_TIMEOUT_SECS")
        .output()
        .unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn solve(extra: &[&str]) -> Output {
    let g = fixture();
    let mut args = vec!["solve", "--graph", g.to_str().unwrap(), "--start", "0", "--goal", "6"];
    args.extend_from_slice(extra);
    rcsp(&args)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn solves_the_seven_state_example() {
    let out = solve(&["--limits", "4,4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["status"], "optimal");
    assert_eq!(v["cost1"], 4);
    assert_eq!(v["solutions"][0]["cost"], serde_json::json!([4, 4, 4]));
    assert_eq!(v["solutions"][0]["path"], serde_json::json!([0, 3, 6]));
    assert_eq!(v["killed"], serde_json::json!([2, 5]));
}

#[test]
fn every_algorithm_reports_the_same_cost() {
    for algo in ["rcbda", "rcebda", "rcebda-par", "oracle"] {
        let out = solve(&["--limits", "4,4", "--algo", algo]);
        assert_eq!(out.status.code(), Some(0), "{algo}");
        assert_eq!(json(&out)["cost1"], 4, "{algo}");
    }
}

#[test]
fn text_format() {
    let out = solve(&["--limits", "5,5", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("cost1: 3"), "{text}");
    assert!(text.contains("path: 0 1 3 6"), "{text}");
}

#[test]
fn trace_file() {
    let path = scratch("trace.txt");
    let out = solve(&["--limits", "4,4", "--trace", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let trace = std::fs::read_to_string(&path).unwrap();
    let first: Vec<&str> = trace.lines().next().unwrap().split_whitespace().collect();
    assert_eq!(&first[..3], &["1", "fwd", "0"]);
    assert!(trace.lines().nth(5).unwrap().contains("ub=4 sols=1"));

    let out = solve(&["--limits", "4,4", "--algo", "rcbda", "--trace", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(solve(&["--limits", "0,0"]).status.code(), Some(2));
    let g = fixture();
    let missing_goal = rcsp(&["solve", "--graph", g.to_str().unwrap(), "--start", "0", "--limits", "4,4"]);
    assert_eq!(missing_goal.status.code(), Some(1));
    assert_eq!(solve(&["--limits", "4,4", "--delta", "50"]).status.code(), Some(1));
    assert_eq!(solve(&[]).status.code(), Some(1));
    assert_eq!(solve(&["--limits", "4"]).status.code(), Some(1));
    assert_eq!(solve(&["--delta", "101"]).status.code(), Some(1));
    let out = rcsp(&["solve", "--graph", "/nonexistent", "--start", "0", "--goal", "1", "--limits", "1,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert_eq!(rcsp(&["--help"]).status.code(), Some(0));
}

#[test]
fn delta_sets_limits() {
    let out = solve(&["--delta", "100"]);
    assert_eq!(out.status.code(), Some(0));
    // The unconstrained optimum is the cheapest path in the first cost.
    assert_eq!(json(&out)["cost1"], 3);
}

#[test]
fn timeout_from_environment() {
    let g = fixture();
    let out = Command::new(env!("CARGO_BIN_EXE_rcsp"))
        .args(["solve", "--graph", g.to_str().unwrap(), "--start", "0", "--goal", "6", "--limits", "4,4"])
        .env("RCSP_TIMEOUT_SECS", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("RCSP_TIMEOUT_SECS"));
}

#[test]
fn grid_gen_bench_pipeline() {
    let graph = scratch("grid.txt");
    let pairs = scratch("pairs.txt");
    let instances = scratch("instances.csv");
    let summary = scratch("summary.csv");
    let out = rcsp(&["grid", "--width", "5", "--height", "5", "--seed", "3", "--out", graph.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(&pairs, "0 24\n4 20\n").unwrap();
    let out = rcsp(&[
        "gen", "--graph", graph.to_str().unwrap(), "--pairs", pairs.to_str().unwrap(),
        "--deltas", "30,70", "--out", instances.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let records = std::fs::read_to_string(&instances).unwrap();
    assert_eq!(records.lines().count(), 5);
    assert!(records.starts_with("pair_id,start,goal,delta_pct,limits"));

    let out = rcsp(&[
        "bench", "--graph", graph.to_str().unwrap(), "--instances", instances.to_str().unwrap(),
        "--algos", "rcbda,rcebda,oracle", "--map", "g5", "--summary", summary.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 12);
    for chunk in rows.chunks(3) {
        assert!(chunk.iter().all(|r| &r[0] == "g5" && r[5] == chunk[0][5]));
        assert!(chunk.iter().all(|r| r[6] == chunk[0][6]));
        assert_ne!(&chunk[0][5], "error");
    }
    let summary = std::fs::read_to_string(&summary).unwrap();
    assert!(summary.starts_with("map,algo,solved,total,t_min_ms,t_avg_ms,t_max_ms"));
    assert_eq!(summary.lines().count(), 4);
}

#[test]
fn empty_instance_file_gives_header_only() {
    let instances = scratch("empty.csv");
    std::fs::write(&instances, "").unwrap();
    let g = fixture();
    let out = rcsp(&["bench", "--graph", g.to_str().unwrap(), "--instances", instances.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("map,algo,pair_id,delta,k,status"));
}
