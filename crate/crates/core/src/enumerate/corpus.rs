//! Graph families for exhaustive cross-checks.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::graph::{Edge, SimpleGraph, VertexId};
use crate::iso::{canonical_code, canonical_form, CanonicalCode};

/// Every connected graph on vertex set `{1..n}` for `1 ≤ n ≤ max_vertices`
/// with at most `max_edges` edges. Labeled: isomorphic copies all appear.
pub fn labeled_connected_graphs(max_vertices: u32, max_edges: usize) -> Vec<SimpleGraph> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let pairs: Vec<Edge> = (1..=n).flat_map(|a| ((a + 1)..=n).map(move |b| Edge::of(a, b))).collect();
        for mask in 0u64..1 << pairs.len() {
            if mask.count_ones() as usize > max_edges || mask.count_ones() + 1 < n {
                continue;
            }
            let mut g = SimpleGraph::new();
            for i in 1..=n {
                g.add_vertex(VertexId::new(i).expect("positive"));
            }
            for (k, &e) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g.add_edge(e);
                }
            }
            if g.is_connected() {
                out.push(g);
            }
        }
    }
    out
}

/// One representative per isomorphism class of trees with at most
/// `max_edges` edges, in canonical labeling, smallest first.
pub fn trees(max_edges: usize) -> Vec<SimpleGraph> {
    let mut single = SimpleGraph::new();
    single.add_vertex(VertexId::new(1).expect("positive"));
    let mut out = alloc::vec![single.clone()];
    let mut layer = alloc::vec![single];
    for _ in 0..max_edges {
        let mut next: BTreeMap<CanonicalCode, SimpleGraph> = BTreeMap::new();
        for t in &layer {
            let leaf = t.fresh_vertex();
            for v in t.vertices() {
                let mut grown = t.clone();
                grown.add_edge(Edge::new(v, leaf).expect("fresh vertex differs"));
                next.entry(canonical_code(&grown)).or_insert_with(|| canonical_form(&grown));
            }
        }
        layer = next.into_values().collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Groups graphs by isomorphism class; each class keeps its first member.
pub fn isomorphism_classes<'a, I>(graphs: I) -> BTreeMap<CanonicalCode, &'a SimpleGraph>
where
    I: IntoIterator<Item = &'a SimpleGraph>,
{
    let mut classes = BTreeMap::new();
    for g in graphs {
        classes.entry(canonical_code(g)).or_insert(g);
    }
    classes
}
