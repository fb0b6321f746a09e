//! Labeled simple graphs and multigraphs over [`Var`] vertex ids, the graph
//! associated with a 2-CNF, and the structural operations the membership
//! decider builds on.
//!
//! Everything here is labeled: two graphs are equal only if their vertex and
//! edge sets coincide. Isomorphism lives in [`crate::iso`].

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::formula::{Clause, Cnf2, Var};

pub type VertexId = Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("the CNF is trivial (⊤ or ⊥) and has no associated graph")]
    NotNontrivial,
    #[error("unit clause {0} has no edge in the associated graph")]
    UnitClausePresent(Clause),
    #[error("edge {0} has multiplicity {1}")]
    MultiEdgePresent(Edge, usize),
    #[error("edge {0} is not in the graph")]
    EdgeAbsent(Edge),
    #[error("edge {0} lies in a triangle")]
    EdgeInTriangle(Edge),
}

/// An unordered vertex pair stored as `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: VertexId,
    v: VertexId,
}

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Option<Edge> {
        match a.cmp(&b) {
            core::cmp::Ordering::Less => Some(Edge { u: a, v: b }),
            core::cmp::Ordering::Greater => Some(Edge { u: b, v: a }),
            core::cmp::Ordering::Equal => None,
        }
    }

    /// Edge from raw indices; panics on zero or equal endpoints.
    pub fn of(a: u32, b: u32) -> Edge {
        let a = Var::new(a).expect("vertex ids are positive");
        let b = Var::new(b).expect("vertex ids are positive");
        Edge::new(a, b).expect("edge endpoints must differ")
    }

    pub fn u(&self) -> VertexId {
        self.u
    }

    pub fn v(&self) -> VertexId {
        self.v
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    pub fn contains(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    pub fn other(&self, x: VertexId) -> Option<VertexId> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u.index(), self.v.index())
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u.index(), self.v.index())
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<Edge, usize>,
}

impl Multigraph {
    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn multiplicity(&self, e: Edge) -> usize {
        self.edges.get(&e).copied().unwrap_or(0)
    }

    /// Distinct vertex pairs with their multiplicities.
    pub fn edges(&self) -> impl Iterator<Item = (Edge, usize)> + '_ {
        self.edges.iter().map(|(e, m)| (*e, *m))
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.values().sum()
    }

    pub fn add_edge(&mut self, e: Edge) {
        self.vertices.insert(e.u);
        self.vertices.insert(e.v);
        *self.edges.entry(e).or_insert(0) += 1;
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Multigraph")
            .field("vertices", &self.vertices)
            .field("edges", &self.edges)
            .finish()
    }
}

/// A simple undirected graph, stored as an adjacency map.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl SimpleGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges<I: IntoIterator<Item = Edge>>(edges: I) -> Self {
        let mut g = SimpleGraph::new();
        for e in edges {
            g.add_edge(e);
        }
        g
    }

    /// Graph from raw index pairs; see [`Edge::of`].
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        Self::from_edges(pairs.iter().map(|&(a, b)| Edge::of(a, b)))
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
    }

    /// Adds `e` and its endpoints; returns false if the edge was present.
    pub fn add_edge(&mut self, e: Edge) -> bool {
        self.adj.entry(e.v).or_default().insert(e.u);
        self.adj.entry(e.u).or_default().insert(e.v)
    }

    /// Removes `e`, keeping its endpoints.
    pub fn remove_edge(&mut self, e: Edge) -> bool {
        let present = self.adj.get_mut(&e.u).is_some_and(|n| n.remove(&e.v));
        if present {
            self.adj.get_mut(&e.v).map(|n| n.remove(&e.u));
        }
        present
    }

    pub fn remove_vertex(&mut self, v: VertexId) -> bool {
        let Some(neighbors) = self.adj.remove(&v) else {
            return false;
        };
        for n in neighbors {
            if let Some(set) = self.adj.get_mut(&n) {
                set.remove(&v);
            }
        }
        true
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.adj.get(&e.u).is_some_and(|n| n.contains(&e.v))
    }

    pub fn has_edge_between(&self, a: VertexId, b: VertexId) -> bool {
        Edge::new(a, b).is_some_and(|e| self.contains_edge(e))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.adj.keys().copied().collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.range(u..).map(move |&v| Edge { u, v }))
            .filter(|e| e.u != e.v)
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn neighbor_set(&self, v: VertexId) -> Option<&BTreeSet<VertexId>> {
        self.adj.get(&v)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn max_vertex(&self) -> Option<VertexId> {
        self.adj.keys().next_back().copied()
    }

    /// The id that subdivision and contraction allocate: max existing + 1.
    pub fn fresh_vertex(&self) -> VertexId {
        self.max_vertex().map_or(Var::new(1).expect("1 is positive"), Var::next)
    }

    /// Common neighbors of an edge's endpoints, i.e. the triangles on it.
    pub fn triangle_apexes(&self, e: Edge) -> impl Iterator<Item = VertexId> + '_ {
        let nv = self.adj.get(&e.v);
        self.neighbors(e.u).filter(move |x| nv.is_some_and(|n| n.contains(x)))
    }

    pub fn in_triangle(&self, e: Edge) -> bool {
        self.triangle_apexes(e).next().is_some()
    }

    /// Subgraph induced on `keep`.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> SimpleGraph {
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(&v, ns)| (v, ns.intersection(keep).copied().collect()))
            .collect();
        SimpleGraph { adj }
    }

    /// |E| − |V| + number of connected components.
    pub fn cycle_rank(&self) -> usize {
        (self.edge_count() + self.component_count()) - self.vertex_count()
    }

    /// Cycle rank of each connected component, in component order.
    pub fn component_cycle_ranks(&self) -> Vec<usize> {
        self.connected_components().iter().map(|c| c.edge_count() + 1 - c.vertex_count()).collect()
    }

    pub fn component_count(&self) -> usize {
        self.component_vertex_sets().len()
    }

    fn component_vertex_sets(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.adj.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(x) = queue.pop_front() {
                comp.insert(x);
                for y in self.neighbors(x) {
                    if seen.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Maximal connected subgraphs, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<SimpleGraph> {
        self.component_vertex_sets().iter().map(|c| self.induced(c)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Maximal subgraph with minimum degree at least two (possibly empty),
    /// obtained by repeatedly deleting vertices of degree at most one.
    pub fn two_core(&self) -> SimpleGraph {
        let mut g = self.clone();
        let mut queue: Vec<VertexId> = g.vertices().filter(|&v| g.degree(v) <= 1).collect();
        while let Some(v) = queue.pop() {
            if !g.contains_vertex(v) {
                continue;
            }
            let neighbors: Vec<VertexId> = g.neighbors(v).collect();
            g.remove_vertex(v);
            for n in neighbors {
                if g.degree(n) == 1 {
                    queue.push(n);
                }
            }
        }
        g
    }

    /// Articulation points by DFS low-points.
    pub fn cut_vertices(&self) -> BTreeSet<VertexId> {
        let order: Vec<VertexId> = self.vertices().collect();
        let idx = |v: VertexId| order.binary_search(&v).expect("vertex in graph");
        let n = order.len();
        let adj: Vec<Vec<usize>> = order.iter().map(|&v| self.neighbors(v).map(idx).collect()).collect();
        let mut disc = alloc::vec![usize::MAX; n];
        let mut low = alloc::vec![0usize; n];
        let mut is_cut = alloc::vec![false; n];
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            // (vertex, parent, next neighbor position)
            let mut stack = alloc::vec![(root, usize::MAX, 0usize)];
            while let Some(&mut (x, parent, ref mut pos)) = stack.last_mut() {
                if *pos < adj[x].len() {
                    let y = adj[x][*pos];
                    *pos += 1;
                    if disc[y] == usize::MAX {
                        disc[y] = time;
                        low[y] = time;
                        time += 1;
                        if x == root {
                            root_children += 1;
                        }
                        stack.push((y, x, 0));
                    } else if y != parent {
                        low[x] = low[x].min(disc[y]);
                    }
                    continue;
                }
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[x]);
                    if parent != root && low[x] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        order.into_iter().zip(is_cut).filter_map(|(v, c)| c.then_some(v)).collect()
    }

    /// Replaces `e = (u,v)` with the path `u – w – v` through a fresh vertex.
    pub fn subdivide_edge(&self, e: Edge) -> Result<(SimpleGraph, VertexId), GraphError> {
        if !self.contains_edge(e) {
            return Err(GraphError::EdgeAbsent(e));
        }
        let w = self.fresh_vertex();
        let mut g = self.clone();
        g.remove_edge(e);
        g.add_edge(Edge::new(e.u, w).expect("fresh vertex differs"));
        g.add_edge(Edge::new(w, e.v).expect("fresh vertex differs"));
        Ok((g, w))
    }

    /// Merges the endpoints of an edge that lies in no triangle into a fresh
    /// vertex.
    pub fn contract_edge(&self, e: Edge) -> Result<(SimpleGraph, VertexId), GraphError> {
        if !self.contains_edge(e) {
            return Err(GraphError::EdgeAbsent(e));
        }
        if self.in_triangle(e) {
            return Err(GraphError::EdgeInTriangle(e));
        }
        let w = self.fresh_vertex();
        let mut g = self.clone();
        let around: Vec<VertexId> =
            self.neighbors(e.u).chain(self.neighbors(e.v)).filter(|&x| !e.contains(x)).collect();
        g.remove_vertex(e.u);
        g.remove_vertex(e.v);
        g.add_vertex(w);
        for x in around {
            g.add_edge(Edge::new(x, w).expect("fresh vertex differs"));
        }
        Ok((g, w))
    }

    /// Labeled containment: `V(self) ⊆ V(other)` and `E(self) ⊆ E(other)`.
    pub fn is_subgraph_of(&self, other: &SimpleGraph) -> bool {
        self.adj.iter().all(|(v, ns)| other.adj.get(v).is_some_and(|on| ns.is_subset(on)))
    }

    /// Vertices with no incident edge.
    pub fn isolated_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.iter().filter(|(_, ns)| ns.is_empty()).map(|(v, _)| *v)
    }

    /// Copy without isolated vertices.
    pub fn without_isolated(&self) -> SimpleGraph {
        let adj = self.adj.iter().filter(|(_, ns)| !ns.is_empty()).map(|(v, ns)| (*v, ns.clone())).collect();
        SimpleGraph { adj }
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph {{ V: [")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", v.index())?;
        }
        f.write_str("], E: [")?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("] }")
    }
}

pub fn connected_components(g: &SimpleGraph) -> Vec<SimpleGraph> {
    g.connected_components()
}

pub fn is_subgraph(g: &SimpleGraph, h: &SimpleGraph) -> bool {
    g.is_subgraph_of(h)
}

/// One vertex per variable and one edge per clause, with multiplicity.
pub fn associated_multigraph(s: &Cnf2) -> Result<Multigraph, GraphError> {
    let set = s.clause_set().ok_or(GraphError::NotNontrivial)?;
    let mut g = Multigraph::default();
    for clause in set.iter() {
        match clause.variables() {
            Some((a, b)) => g.add_edge(Edge::new(a, b).expect("reduced clauses span two variables")),
            None => return Err(GraphError::UnitClausePresent(*clause)),
        }
    }
    Ok(g)
}

pub fn as_simple(m: &Multigraph) -> Result<SimpleGraph, GraphError> {
    let mut g = SimpleGraph::new();
    for &v in m.vertices() {
        g.add_vertex(v);
    }
    for (e, mult) in m.edges() {
        if mult != 1 {
            return Err(GraphError::MultiEdgePresent(e, mult));
        }
        g.add_edge(e);
    }
    Ok(g)
}

/// The simple graph supporting a simple 2-CNF.
pub fn associated_graph(s: &Cnf2) -> Result<SimpleGraph, GraphError> {
    as_simple(&associated_multigraph(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Var {
        Var::new(i).unwrap()
    }

    fn butterfly() -> SimpleGraph {
        SimpleGraph::from_pairs(&[(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)])
    }

    fn brute_force_cut_vertices(g: &SimpleGraph) -> BTreeSet<VertexId> {
        let base = g.component_count();
        g.vertices()
            .filter(|&x| {
                let mut h = g.clone();
                h.remove_vertex(x);
                h.component_count() > base
            })
            .collect()
    }

    #[test]
    fn cycle_rank_examples() {
        let c3 = SimpleGraph::from_pairs(&[(1, 2), (2, 3), (1, 3)]);
        assert_eq!(c3.cycle_rank(), 1);
        let k4 = SimpleGraph::from_pairs(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(k4.cycle_rank(), 3);
        assert_eq!(butterfly().cycle_rank(), 2);
        let two = SimpleGraph::from_pairs(&[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]);
        assert_eq!(two.cycle_rank(), 2);
        assert_eq!(two.component_cycle_ranks(), [1, 1]);
    }

    #[test]
    fn two_core_examples() {
        let tree = SimpleGraph::from_pairs(&[(1, 2), (2, 3), (2, 4), (4, 5)]);
        assert!(tree.two_core().is_empty());
        let mut g = butterfly();
        g.add_edge(Edge::of(5, 6));
        assert_eq!(g.two_core(), butterfly());
        let c3 = SimpleGraph::from_pairs(&[(1, 2), (2, 3), (1, 3)]);
        assert_eq!(c3.two_core(), c3);
    }

    #[test]
    fn cut_vertex_examples() {
        // Oracle: deleting each vertex and counting components.
        let g = butterfly();
        assert_eq!(brute_force_cut_vertices(&g), [v(3)].into_iter().collect());
        assert_eq!(g.cut_vertices(), brute_force_cut_vertices(&g));
        let k4 = SimpleGraph::from_pairs(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert!(k4.cut_vertices().is_empty());
        let path = SimpleGraph::from_pairs(&[(1, 2), (2, 3)]);
        assert_eq!(path.cut_vertices(), [v(2)].into_iter().collect());
    }

    #[test]
    fn subdivision_examples() {
        let c3 = SimpleGraph::from_pairs(&[(1, 2), (2, 3), (1, 3)]);
        let (c4, w) = c3.subdivide_edge(Edge::of(1, 2)).unwrap();
        assert_eq!(w, v(4));
        assert_eq!(c4, SimpleGraph::from_pairs(&[(1, 4), (4, 2), (2, 3), (1, 3)]));
        let single = SimpleGraph::from_pairs(&[(1, 2)]);
        let (path, _) = single.subdivide_edge(Edge::of(1, 2)).unwrap();
        assert_eq!(path, SimpleGraph::from_pairs(&[(1, 3), (2, 3)]));
        assert_eq!(single.subdivide_edge(Edge::of(1, 3)), Err(GraphError::EdgeAbsent(Edge::of(1, 3))));
    }

    #[test]
    fn contraction_examples() {
        let path = SimpleGraph::from_pairs(&[(1, 2), (2, 3)]);
        let (g, w) = path.contract_edge(Edge::of(1, 2)).unwrap();
        assert_eq!(g, SimpleGraph::from_pairs(&[(3, 4)]));
        assert_eq!(w, v(4));
        let bowtie = SimpleGraph::from_pairs(&[(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6)]);
        let (g, _) = bowtie.contract_edge(Edge::of(3, 4)).unwrap();
        assert_eq!(g, SimpleGraph::from_pairs(&[(1, 2), (1, 7), (2, 7), (7, 5), (7, 6), (5, 6)]));
        let c3 = SimpleGraph::from_pairs(&[(1, 2), (2, 3), (1, 3)]);
        assert_eq!(c3.contract_edge(Edge::of(1, 2)), Err(GraphError::EdgeInTriangle(Edge::of(1, 2))));
    }

    #[test]
    fn components_examples() {
        let two = SimpleGraph::from_pairs(&[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]);
        let comps = two.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[1], SimpleGraph::from_pairs(&[(4, 5), (5, 6), (4, 6)]));
        assert_eq!(butterfly().connected_components(), [butterfly()]);
        let mut edgeless = SimpleGraph::new();
        for i in 1..=3 {
            edgeless.add_vertex(v(i));
        }
        assert_eq!(edgeless.connected_components().len(), 3);
        assert_eq!(edgeless.cycle_rank(), 0);
    }

    #[test]
    fn subgraph_examples() {
        let c3 = SimpleGraph::from_pairs(&[(1, 2), (2, 3), (1, 3)]);
        let k4 = SimpleGraph::from_pairs(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert!(is_subgraph(&c3, &k4));
        assert!(!is_subgraph(&k4, &c3));
        assert!(is_subgraph(&k4, &k4));
    }

    #[test]
    fn associated_graph_examples() {
        let s = Cnf2::from_dimacs_clauses(&[&[1i64, 2][..], &[-1, -2]]).unwrap();
        let m = associated_multigraph(&s).unwrap();
        assert_eq!(m.multiplicity(Edge::of(1, 2)), 2);
        assert_eq!(m.edge_count(), 2);
        assert_eq!(as_simple(&m), Err(GraphError::MultiEdgePresent(Edge::of(1, 2), 2)));
        assert_eq!(associated_multigraph(&Cnf2::True), Err(GraphError::NotNontrivial));
        let u = Cnf2::from_dimacs_clauses(&[&[1i64][..]]).unwrap();
        assert!(matches!(associated_multigraph(&u), Err(GraphError::UnitClausePresent(_))));
    }

    #[test]
    fn edgeless_multigraph_is_simple() {
        let mut m = Multigraph::default();
        for i in 1..=3 {
            m.add_vertex(v(i));
        }
        let g = as_simple(&m).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 0);
    }
}
