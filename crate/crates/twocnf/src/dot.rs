//! Graphviz output.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use twocnf_core::graph::SimpleGraph;
use twocnf_core::minors::Embedding;

/// An undirected DOT graph. Edges of `embedding` are drawn bold and its
/// branch vertices doubled.
pub fn to_dot(g: &SimpleGraph, embedding: Option<&Embedding>) -> String {
    let (edges, branches) = match embedding {
        Some(e) => (e.host_edges(), e.branch_map.values().copied().collect()),
        None => (BTreeSet::new(), BTreeSet::new()),
    };
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        let attr = if branches.contains(&v) { " [shape=doublecircle]" } else { "" };
        let _ = writeln!(out, "  {}{attr};", v.index());
    }
    for e in g.edges() {
        let attr = if edges.contains(&e) { " [penwidth=3, color=red]" } else { "" };
        let _ = writeln!(out, "  {} -- {}{attr};", e.u().index(), e.v().index());
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use twocnf_core::fixtures::fixture;
    use twocnf_core::minors::{decide_membership, Verdict};

    #[test]
    fn plain_and_annotated() {
        let g = fixture("c3").unwrap();
        assert_eq!(to_dot(&g, None), "graph G {\n  1;\n  2;\n  3;\n  1 -- 2;\n  1 -- 3;\n  2 -- 3;\n}\n");
        let g = fixture("butterfly").unwrap();
        let Verdict::InU { embedding, .. } = decide_membership(&g) else { panic!() };
        let dot = to_dot(&g, Some(&embedding));
        assert_eq!(dot.matches("color=red").count(), embedding.host_edges().len());
        assert!(dot.contains("doublecircle"));
    }
}
