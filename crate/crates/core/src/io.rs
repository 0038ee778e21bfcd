//! Graph file formats: DIMACS `.gr` shortest-path files and a plain edge list.
//!
//! DIMACS vertex ids are 1-based; they are shifted to 0-based state ids here
//! and nowhere else.

use std::io::{BufRead, Write};

use crate::cost::{Cost, CostVector};
use crate::error::{RcspError, Result};
use crate::graph::{Edge, MultiCostGraph, StateId};

/// One arc of a DIMACS layer with 0-based endpoints.
pub type Arc = (StateId, StateId, Cost);

/// Contents of a single DIMACS `.gr` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimacsLayer {
    pub state_count: usize,
    pub arcs: Vec<Arc>,
}

fn parse_err(line: usize, message: impl Into<String>) -> RcspError {
    RcspError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

/// Parses a DIMACS shortest-path graph (`c` comments, one `p sp n m` header,
/// `a u v w` arcs). Arc order and parallel arcs are preserved.
pub fn load_dimacs_gr<R: BufRead>(reader: R) -> Result<DimacsLayer> {
    let mut header: Option<(usize, usize)> = None;
    let mut arcs = Vec::new();
    let mut last_line = 0;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = line?;
        let mut toks = line.split_whitespace();
        let Some(tag) = toks.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(parse_err(lineno, "duplicate problem line"));
                }
                if toks.next() != Some("sp") {
                    return Err(parse_err(lineno, "expected `p sp <n> <m>`"));
                }
                let n: usize = parse_num(toks.next(), lineno, "vertex count")?;
                let m: usize = parse_num(toks.next(), lineno, "arc count")?;
                if toks.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens after problem line"));
                }
                arcs.reserve(m);
                header = Some((n, m));
            }
            "a" => {
                let Some((n, _)) = header else {
                    return Err(parse_err(lineno, "arc before problem line"));
                };
                let u: usize = parse_num(toks.next(), lineno, "tail")?;
                let v: usize = parse_num(toks.next(), lineno, "head")?;
                let w_tok = toks.next();
                if let Some(w) = w_tok {
                    if w.starts_with('-') {
                        return Err(parse_err(lineno, format!("negative weight `{w}`")));
                    }
                }
                let w: Cost = parse_num(w_tok, lineno, "weight")?;
                if toks.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens after arc"));
                }
                for id in [u, v] {
                    if id == 0 || id > n {
                        return Err(parse_err(lineno, format!("vertex {id} outside 1..={n}")));
                    }
                }
                arcs.push(((u - 1) as StateId, (v - 1) as StateId, w));
            }
            other => return Err(parse_err(lineno, format!("unknown line type `{other}`"))),
        }
    }
    let Some((state_count, m)) = header else {
        return Err(parse_err(last_line.max(1), "missing `p sp` problem line"));
    };
    if arcs.len() != m {
        return Err(parse_err(
            last_line,
            format!("header declares {m} arcs, found {}", arcs.len()),
        ));
    }
    Ok(DimacsLayer { state_count, arcs })
}

pub fn write_dimacs_gr<W: Write>(mut out: W, layer: &DimacsLayer) -> Result<()> {
    writeln!(out, "p sp {} {}", layer.state_count, layer.arcs.len())?;
    for &(u, v, w) in &layer.arcs {
        writeln!(out, "a {} {} {}", u + 1, v + 1, w)?;
    }
    Ok(())
}

/// Extracts cost component `index` of every edge as a DIMACS layer.
pub fn graph_layer(graph: &MultiCostGraph, index: usize) -> DimacsLayer {
    DimacsLayer {
        state_count: graph.state_count(),
        arcs: graph
            .edges()
            .iter()
            .map(|e| (e.from, e.to, e.cost[index]))
            .collect(),
    }
}

/// Combines a distance and a time layer into a road-network scenario graph.
///
/// Edge costs are `(distance, time, degree)` for `k = 3` and
/// `(distance, time, degree, 1)` for `k = 4`, where `degree` is
/// `outdeg(u) + outdeg(v)`: twice the average out-degree of the two
/// endpoints, kept integral.
pub fn build_scenario_graph(
    distance: &DimacsLayer,
    time: &DimacsLayer,
    k: usize,
) -> Result<MultiCostGraph> {
    if !(3..=4).contains(&k) {
        return Err(RcspError::InvalidInstance(format!(
            "scenario graphs have 3 or 4 costs, not {k}"
        )));
    }
    if distance.state_count != time.state_count {
        return Err(RcspError::TopologyMismatch(format!(
            "{} vs {} vertices",
            distance.state_count, time.state_count
        )));
    }
    if distance.arcs.len() != time.arcs.len() {
        return Err(RcspError::TopologyMismatch(format!(
            "{} vs {} arcs",
            distance.arcs.len(),
            time.arcs.len()
        )));
    }
    let n = distance.state_count;
    let mut outdeg = vec![0 as Cost; n];
    for &(u, _, _) in &distance.arcs {
        outdeg[u as usize] += 1;
    }
    let mut edges = Vec::with_capacity(distance.arcs.len());
    for (i, (&(u, v, d), &(tu, tv, t))) in distance.arcs.iter().zip(&time.arcs).enumerate() {
        if (u, v) != (tu, tv) {
            return Err(RcspError::TopologyMismatch(format!(
                "arc {} is {}->{} in the distance layer but {}->{} in the time layer",
                i + 1,
                u + 1,
                v + 1,
                tu + 1,
                tv + 1
            )));
        }
        let degree = outdeg[u as usize] + outdeg[v as usize];
        let cost = if k == 3 {
            CostVector::from_slice(&[d, t, degree])
        } else {
            CostVector::from_slice(&[d, t, degree, 1])
        };
        edges.push(Edge { from: u, to: v, cost });
    }
    MultiCostGraph::with_arity(n, k, edges)
}

/// Reads the plain edge-list format: state count, edge count, then one
/// `u v c1 .. ck` line per edge with 0-based ids. Blank lines and lines
/// starting with `#` are ignored.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<MultiCostGraph> {
    let mut n: Option<usize> = None;
    let mut m: Option<usize> = None;
    let mut k: Option<usize> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if n.is_none() {
            n = Some(parse_num(Some(trimmed), lineno, "state count")?);
            continue;
        }
        if m.is_none() {
            let count: usize = parse_num(Some(trimmed), lineno, "edge count")?;
            edges.reserve(count);
            m = Some(count);
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        let u: StateId = parse_num(toks.next(), lineno, "tail")?;
        let v: StateId = parse_num(toks.next(), lineno, "head")?;
        let costs = toks
            .map(|t| {
                t.parse::<Cost>()
                    .map_err(|_| parse_err(lineno, format!("invalid cost `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        match k {
            None if costs.len() < 2 => {
                return Err(parse_err(lineno, "need at least two costs per edge"))
            }
            None => k = Some(costs.len()),
            Some(k) if k != costs.len() => {
                return Err(parse_err(
                    lineno,
                    format!("expected {k} costs, found {}", costs.len()),
                ))
            }
            _ => {}
        }
        let state_count = n.unwrap();
        if u as usize >= state_count || v as usize >= state_count {
            return Err(parse_err(lineno, format!("edge {u}->{v} outside 0..{state_count}")));
        }
        edges.push(Edge {
            from: u,
            to: v,
            cost: CostVector::from(costs),
        });
    }
    let (Some(n), Some(m)) = (n, m) else {
        return Err(parse_err(last_line.max(1), "missing state or edge count"));
    };
    if edges.len() != m {
        return Err(parse_err(
            last_line,
            format!("declared {m} edges, found {}", edges.len()),
        ));
    }
    MultiCostGraph::with_arity(n, k.unwrap_or(2), edges)
}

pub fn write_edge_list<W: Write>(mut out: W, graph: &MultiCostGraph) -> Result<()> {
    writeln!(out, "{}", graph.state_count())?;
    writeln!(out, "{}", graph.edge_count())?;
    for e in graph.edges() {
        write!(out, "{} {}", e.from, e.to)?;
        for c in e.cost.as_slice() {
            write!(out, " {c}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}
