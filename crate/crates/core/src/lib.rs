//! Resource constrained shortest paths on multi-cost digraphs.
//!
//! Every edge carries a cost vector `(c1, .., ck)`. The first component is the
//! cost to minimize; the others are resources, each with an upper limit. The
//! solvers find the minimum primary cost of a start-goal path whose summed
//! resources respect every limit:
//!
//! * [`solve_rcbda`]: bidirectional A* with eager dominance checks; reports
//!   the optimal cost only.
//! * [`solve_rcebda`]: the enhanced search with lazy dominance checks and
//!   network reduction; also reports every optimal path whose resource vector
//!   is not dominated by another optimal one.
//! * [`solve_parallel`]: the enhanced search with one thread per direction.
//! * [`oracle_answer`]: exhaustive enumeration for small instances.
//!
//! ```
//! use rcsp::{solve_rcebda, CostVector, Edge, MultiCostGraph, ProblemInstance, SearchConfig, Status};
//!
//! let edge = |from, to, c: [u64; 3]| Edge { from, to, cost: CostVector::from(c) };
//! let graph = MultiCostGraph::new(3, vec![
//!     edge(0, 1, [1, 5, 1]),
//!     edge(1, 2, [1, 5, 1]),
//!     edge(0, 2, [4, 1, 1]),
//! ])?;
//! let problem = ProblemInstance::new(&graph, 0, 2, vec![6, 6])?;
//! let out = solve_rcebda(&problem, &SearchConfig::default())?;
//! assert_eq!(out.status, Status::Optimal);
//! assert_eq!(out.cost(), Some(4));
//! # Ok::<(), rcsp::RcspError>(())
//! ```

pub mod baseline;
pub mod bench;
pub mod bounds;
pub mod cost;
pub mod enhanced;
pub mod error;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod io;
pub mod label;
pub mod oracle;
pub mod parallel;
pub mod search;

pub use baseline::{solve_rcbda, BaselineOutcome};
pub use bench::{run_algorithm, Algorithm, SolveReport};
pub use cost::{Cost, CostVector, INFINITY};
pub use enhanced::{solve_rcebda, solve_rcebda_traced, EnhancedOutcome, SolutionPath, TraceEvent};
pub use error::{RcspError, Result};
pub use graph::{Direction, Edge, MultiCostGraph, StateId};
pub use instance::{ProblemInstance, Tightness};
pub use oracle::{oracle_answer, OracleAnswer};
pub use parallel::solve_parallel;
pub use search::{SearchConfig, Status, TieBreak};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/costs.md")]
    mod costs {}
    #[doc = include_str!("../../../book/src/initialization.md")]
    mod initialization {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/solutions.md")]
    mod solutions {}
    #[doc = include_str!("../../../book/src/parallel.md")]
    mod parallel {}
    #[doc = include_str!("../../../book/src/benchmarks.md")]
    mod benchmarks {}
}
