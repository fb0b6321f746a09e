//! Canonical forms for small simple graphs by color refinement and
//! individualization. Exponential in the worst case; meant for the graph
//! sizes the exhaustive census can handle anyway.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{SimpleGraph, VertexId};

/// Isomorphism-invariant code: vertex count plus the upper triangle of the
/// adjacency matrix under the lexicographically greatest admissible order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    n: usize,
    bits: Vec<u64>,
}

impl CanonicalCode {
    pub fn vertex_count(&self) -> usize {
        self.n
    }
}

struct Dense {
    n: usize,
    adj: Vec<Vec<usize>>,
    matrix: Vec<Vec<bool>>,
}

impl Dense {
    fn new(g: &SimpleGraph) -> (Dense, Vec<VertexId>) {
        let order: Vec<VertexId> = g.vertices().collect();
        let idx = |v: VertexId| order.binary_search(&v).expect("vertex in graph");
        let n = order.len();
        let adj: Vec<Vec<usize>> = order.iter().map(|&v| g.neighbors(v).map(idx).collect()).collect();
        let mut matrix = vec![vec![false; n]; n];
        for (i, ns) in adj.iter().enumerate() {
            for &j in ns {
                matrix[i][j] = true;
            }
        }
        (Dense { n, adj, matrix }, order)
    }

    /// Refines `colors` to the coarsest equitable partition below it. New
    /// colors are ranks of (old color, sorted neighbor colors), so the result
    /// depends only on the isomorphism type of the colored graph.
    fn refine(&self, colors: &mut Vec<usize>) {
        let mut classes = count_distinct(colors);
        loop {
            let signatures: Vec<(usize, Vec<usize>)> = (0..self.n)
                .map(|v| {
                    let mut around: Vec<usize> = self.adj[v].iter().map(|&u| colors[u]).collect();
                    around.sort_unstable();
                    (colors[v], around)
                })
                .collect();
            let mut ranks: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
            for sig in &signatures {
                ranks.insert(sig, 0);
            }
            for (rank, slot) in ranks.values_mut().enumerate() {
                *slot = rank;
            }
            let next: Vec<usize> = signatures.iter().map(|s| ranks[s]).collect();
            let next_classes = ranks.len();
            *colors = next;
            if next_classes == classes {
                return;
            }
            classes = next_classes;
        }
    }

    fn code_for(&self, colors: &[usize]) -> Vec<u64> {
        // colors are a permutation of 0..n here
        let mut at = vec![0usize; self.n];
        for (v, &c) in colors.iter().enumerate() {
            at[c] = v;
        }
        let mut bits = vec![0u64; (self.n * self.n.saturating_sub(1) / 2).div_ceil(64)];
        let mut k = 0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.matrix[at[i]][at[j]] {
                    bits[k / 64] |= 1 << (63 - k % 64);
                }
                k += 1;
            }
        }
        bits
    }

    fn search(&self, colors: Vec<usize>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
        let classes = count_distinct(&colors);
        if classes == self.n {
            let code = self.code_for(&colors);
            if best.as_ref().map_or(true, |(b, _)| code > *b) {
                *best = Some((code, colors));
            }
            return;
        }
        // First non-singleton cell, by color.
        let mut sizes = vec![0usize; classes];
        for &c in &colors {
            sizes[c] += 1;
        }
        let target = sizes.iter().position(|&s| s > 1).expect("some cell is not a singleton");
        for v in (0..self.n).filter(|&v| colors[v] == target) {
            let mut next: Vec<usize> = colors.iter().map(|&c| 2 * c + 1).collect();
            next[v] = 2 * target;
            normalize(&mut next);
            self.refine(&mut next);
            self.search(next, best);
        }
    }
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut seen: Vec<usize> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn normalize(colors: &mut [usize]) {
    let mut seen: Vec<usize> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    for c in colors.iter_mut() {
        *c = seen.binary_search(c).expect("color present");
    }
}

/// Canonical code plus the vertex order realizing it: `order[i]` is the
/// vertex placed at position `i`.
pub fn canonical_labeling(g: &SimpleGraph) -> (CanonicalCode, Vec<VertexId>) {
    let (dense, labels) = Dense::new(g);
    let n = dense.n;
    if n == 0 {
        return (CanonicalCode { n, bits: Vec::new() }, Vec::new());
    }
    let mut colors = vec![0usize; n];
    dense.refine(&mut colors);
    let mut best = None;
    dense.search(colors, &mut best);
    let (bits, colors) = best.expect("search reaches at least one leaf");
    let mut order = vec![labels[0]; n];
    for (v, &c) in colors.iter().enumerate() {
        order[c] = labels[v];
    }
    (CanonicalCode { n, bits }, order)
}

pub fn canonical_code(g: &SimpleGraph) -> CanonicalCode {
    canonical_labeling(g).0
}

/// The canonical representative on vertices `1..=n`.
pub fn canonical_form(g: &SimpleGraph) -> SimpleGraph {
    let (_, order) = canonical_labeling(g);
    relabel_by_position(g, &order)
}

/// Relabels `order[i]` to `i + 1`.
pub fn relabel_by_position(g: &SimpleGraph, order: &[VertexId]) -> SimpleGraph {
    let pos: BTreeMap<VertexId, u32> = order.iter().enumerate().map(|(i, &v)| (v, i as u32 + 1)).collect();
    let mut out = SimpleGraph::new();
    for &p in pos.values() {
        out.add_vertex(VertexId::new(p).expect("positions start at 1"));
    }
    for e in g.edges() {
        out.add_edge(crate::graph::Edge::of(pos[&e.u()], pos[&e.v()]));
    }
    out
}

pub fn is_isomorphic(g: &SimpleGraph, h: &SimpleGraph) -> bool {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut dg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = h.vertices().map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    dg == dh && canonical_code(g) == canonical_code(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn k4() -> SimpleGraph {
        SimpleGraph::from_pairs(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    }

    /// Oracle: try every bijection.
    fn brute_isomorphic(g: &SimpleGraph, h: &SimpleGraph) -> bool {
        let gv: Vec<VertexId> = g.vertices().collect();
        let hv: Vec<VertexId> = h.vertices().collect();
        if gv.len() != hv.len() || g.edge_count() != h.edge_count() {
            return false;
        }
        let mut perm: Vec<usize> = (0..hv.len()).collect();
        loop {
            let ok = g.edges().all(|e| {
                let a = hv[perm[gv.binary_search(&e.u()).unwrap()]];
                let b = hv[perm[gv.binary_search(&e.v()).unwrap()]];
                h.has_edge_between(a, b)
            });
            if ok {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn relabeled_copies_agree() {
        let butterfly = SimpleGraph::from_pairs(&[(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)]);
        let moved = SimpleGraph::from_pairs(&[(9, 4), (9, 7), (4, 7), (7, 2), (7, 11), (2, 11)]);
        assert!(is_isomorphic(&butterfly, &moved));
        assert_eq!(canonical_form(&butterfly), canonical_form(&moved));
        let bowtie = SimpleGraph::from_pairs(&[(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6)]);
        assert!(!is_isomorphic(&butterfly, &bowtie));
    }

    #[test]
    fn regular_graphs_are_separated() {
        // C6 versus two disjoint triangles: same degrees, refinement alone
        // cannot tell them apart.
        let c6 = SimpleGraph::from_pairs(&[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)]);
        let two = SimpleGraph::from_pairs(&[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]);
        assert!(!is_isomorphic(&c6, &two));
        assert!(!brute_isomorphic(&c6, &two));
        let k33 = SimpleGraph::from_pairs(&[(1, 4), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6)]);
        let prism = SimpleGraph::from_pairs(&[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (1, 4), (2, 5), (3, 6)]);
        assert!(!is_isomorphic(&k33, &prism));
    }

    #[test]
    fn canonical_form_is_a_fixpoint() {
        let g = canonical_form(&k4());
        assert_eq!(canonical_form(&g), g);
        assert_eq!(g, k4());
    }

    #[test]
    fn agrees_with_bijection_search_on_five_vertex_graphs() {
        let pairs: Vec<(u32, u32)> = (1..=5).flat_map(|a| ((a + 1)..=5).map(move |b| (a, b))).collect();
        let graphs: Vec<SimpleGraph> = (0u32..1 << pairs.len())
            .step_by(7)
            .map(|mask| {
                let mut g = SimpleGraph::new();
                for i in 1..=5 {
                    g.add_vertex(VertexId::new(i).unwrap());
                }
                for (k, &(a, b)) in pairs.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        g.add_edge(Edge::of(a, b));
                    }
                }
                g
            })
            .collect();
        for (i, g) in graphs.iter().enumerate() {
            for h in graphs.iter().skip(i).step_by(5) {
                assert_eq!(is_isomorphic(g, h), brute_isomorphic(g, h), "{g:?} vs {h:?}");
            }
        }
    }
}
