//! Plain-text edge lists.
//!
//! ```text
//! # a triangle with a pendant vertex
//! n 4
//! 1 2
//! 2 3
//! 1 3
//! ```
//!
//! `n <count>` adds vertices `1..=count`, `v <id>` adds one vertex and
//! `u v` adds an edge. Text after `#` is ignored. Repeated edges collapse.

use std::fmt::Write as _;

use thiserror::Error;
use twocnf_core::formula::Var;
use twocnf_core::graph::{Edge, SimpleGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct EdgeListError {
    pub line: usize,
    pub reason: String,
}

fn vertex(token: &str, line: usize) -> Result<Var, EdgeListError> {
    token
        .parse::<u32>()
        .ok()
        .and_then(Var::new)
        .ok_or_else(|| EdgeListError { line, reason: format!("`{token}` is not a positive vertex id") })
}

pub fn parse_edge_list(text: &str) -> Result<SimpleGraph, EdgeListError> {
    let mut g = SimpleGraph::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields.as_slice() {
            [] => {}
            ["n", count] => {
                let count: u32 =
                    count.parse().map_err(|_| EdgeListError { line, reason: format!("bad vertex count `{count}`") })?;
                for v in 1..=count {
                    g.add_vertex(Var::new(v).expect("nonzero"));
                }
            }
            ["v", id] => g.add_vertex(vertex(id, line)?),
            [a, b] => {
                let (a, b) = (vertex(a, line)?, vertex(b, line)?);
                let e = Edge::new(a, b).ok_or_else(|| EdgeListError { line, reason: format!("self-loop at {a}") })?;
                g.add_edge(e);
            }
            _ => {
                return Err(EdgeListError { line, reason: format!("expected `u v`, `v <id>` or `n <count>`: `{}`", raw.trim()) })
            }
        }
    }
    Ok(g)
}

/// Writes `g` so that [`parse_edge_list`] reads back the same labeled graph.
pub fn emit_edge_list(g: &SimpleGraph) -> String {
    let mut out = String::new();
    let n = g.vertex_count() as u32;
    let dense = g.max_vertex().map_or(true, |m| m.index() == n);
    if dense {
        let _ = writeln!(out, "n {n}");
    } else {
        for v in g.isolated_vertices() {
            let _ = writeln!(out, "v {}", v.index());
        }
    }
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.u().index(), e.v().index());
    }
    out
}
