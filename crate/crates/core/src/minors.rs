//! Membership in U (graphs that carry an unsatisfiable simple 2-CNF), by two
//! independent routes:
//!
//! * [`decide_membership`] reads the answer off cycle ranks and the 2-core;
//! * [`find_topological_minor`] searches for a subdivision of one of the four
//!   minimal graphs and returns it as an [`Embedding`].
//!
//! The decider calls the search only to produce evidence for a positive
//! answer.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::graph::{Edge, SimpleGraph, VertexId};

/// Host vertex limit for [`find_topological_minor`].
pub const DEFAULT_HOST_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinorError {
    #[error("host graph has {vertices} vertices, above the cap of {cap}")]
    HostTooLarge { vertices: usize, cap: usize },
}

/// The four minimal graphs of U.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternId {
    /// Two triangles sharing a vertex (butterfly).
    VConfig,
    /// Two triangles joined by an edge (bowtie).
    PConfig,
    K4,
    /// K_{1,1,3}, three triangles on a common edge.
    K113,
}

impl PatternId {
    pub const ALL: [PatternId; 4] = [PatternId::VConfig, PatternId::PConfig, PatternId::K4, PatternId::K113];

    /// Order in which the decider reports evidence.
    pub const SEARCH_ORDER: [PatternId; 4] =
        [PatternId::K4, PatternId::K113, PatternId::VConfig, PatternId::PConfig];

    pub fn name(self) -> &'static str {
        match self {
            PatternId::VConfig => "VConfig",
            PatternId::PConfig => "PConfig",
            PatternId::K4 => "K4",
            PatternId::K113 => "K113",
        }
    }

    fn edges(self) -> &'static [(u32, u32)] {
        match self {
            PatternId::VConfig => &[(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)],
            PatternId::PConfig => &[(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6)],
            PatternId::K4 => &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
            PatternId::K113 => &[(1, 2), (1, 4), (2, 3), (2, 4), (2, 5), (3, 4), (4, 5)],
        }
    }

    /// Cycle rank of the pattern; hosts of lower rank cannot contain it.
    pub fn cycle_rank(self) -> usize {
        match self {
            PatternId::VConfig | PatternId::PConfig => 2,
            PatternId::K4 | PatternId::K113 => 3,
        }
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown pattern `{0}` (expected VConfig, PConfig, K4 or K113)")]
pub struct UnknownPattern(pub alloc::string::String);

impl FromStr for PatternId {
    type Err = UnknownPattern;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "vconfig" | "v" | "butterfly" => Ok(PatternId::VConfig),
            "pconfig" | "p" | "bowtie" => Ok(PatternId::PConfig),
            "k4" => Ok(PatternId::K4),
            "k113" | "book" => Ok(PatternId::K113),
            _ => Err(UnknownPattern(s.into())),
        }
    }
}

/// Labeled copy of a pattern on vertices `1..=n`.
pub fn pattern_graph(p: PatternId) -> SimpleGraph {
    SimpleGraph::from_pairs(p.edges())
}

/// A subdivision of a pattern inside a host graph.
///
/// Each path runs from the image of its pattern edge's `u` to the image of
/// its `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub branch_map: BTreeMap<VertexId, VertexId>,
    pub path_map: BTreeMap<Edge, Vec<VertexId>>,
}

impl Embedding {
    /// Host edges used by the paths.
    pub fn host_edges(&self) -> BTreeSet<Edge> {
        self.path_map
            .values()
            .flat_map(|p| p.windows(2).filter_map(|w| Edge::new(w[0], w[1])))
            .collect()
    }

    /// Host vertices on some path.
    pub fn host_vertices(&self) -> BTreeSet<VertexId> {
        self.path_map.values().flatten().copied().collect()
    }

    /// The host subgraph formed by the paths.
    pub fn image(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.host_edges())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NotInUReason {
    /// Every component is a tree.
    Forest,
    /// Every component has at most one independent cycle.
    UnicyclicComponents,
    /// Some component has two independent cycles arranged as a theta.
    ThetaCore,
}

impl NotInUReason {
    pub fn name(self) -> &'static str {
        match self {
            NotInUReason::Forest => "Forest",
            NotInUReason::UnicyclicComponents => "UnicyclicComponents",
            NotInUReason::ThetaCore => "ThetaCore",
        }
    }
}

impl fmt::Display for NotInUReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    InU { pattern: PatternId, embedding: Embedding },
    NotInU(NotInUReason),
}

impl Verdict {
    pub fn is_in_u(&self) -> bool {
        matches!(self, Verdict::InU { .. })
    }
}

/// Structural membership test.
///
/// A connected component with three or more independent cycles is in U. A
/// component with exactly two is in U iff its 2-core has a cut vertex
/// (figure-eight or dumbbell); the remaining rank-2 core is a theta, a
/// subdivision of K4−e. Components with fewer cycles never are.
pub fn decide_membership(g: &SimpleGraph) -> Verdict {
    let mut max_rank = 0;
    for comp in g.connected_components() {
        let rank = comp.cycle_rank();
        max_rank = max_rank.max(rank);
        let in_u = match rank {
            0 | 1 => false,
            2 => !comp.two_core().cut_vertices().is_empty(),
            _ => true,
        };
        if in_u {
            let core = comp.two_core();
            let (pattern, embedding) = PatternId::SEARCH_ORDER
                .iter()
                .find_map(|&p| search_component(&core, p).map(|e| (p, e)))
                .expect("a graph with this structure contains one of the four patterns");
            return Verdict::InU { pattern, embedding };
        }
    }
    Verdict::NotInU(match max_rank {
        0 => NotInUReason::Forest,
        1 => NotInUReason::UnicyclicComponents,
        _ => NotInUReason::ThetaCore,
    })
}

/// Finds a subdivision of `pattern` inside `host`, if one exists.
///
/// Only host vertices count towards `cap`; the search itself is exact.
pub fn find_topological_minor(
    host: &SimpleGraph,
    pattern: PatternId,
    cap: usize,
) -> Result<Option<Embedding>, MinorError> {
    if host.vertex_count() > cap {
        return Err(MinorError::HostTooLarge { vertices: host.vertex_count(), cap });
    }
    // Every pattern has minimum degree two, so any subdivision of it lies in
    // one component of the 2-core.
    Ok(host.two_core().connected_components().iter().find_map(|c| search_component(c, pattern)))
}

/// Checks every embedding invariant against `host` and `pattern`.
pub fn verify_embedding(host: &SimpleGraph, pattern: PatternId, emb: &Embedding) -> bool {
    let pg = pattern_graph(pattern);
    if !emb.branch_map.keys().copied().eq(pg.vertices()) {
        return false;
    }
    let images: BTreeSet<VertexId> = emb.branch_map.values().copied().collect();
    if images.len() != emb.branch_map.len() || !images.iter().all(|&v| host.contains_vertex(v)) {
        return false;
    }
    if !emb.path_map.keys().copied().eq(pg.edges()) {
        return false;
    }
    let mut internal = BTreeSet::new();
    for (e, path) in &emb.path_map {
        if path.len() < 2 {
            return false;
        }
        if path.first() != Some(&emb.branch_map[&e.u()]) || path.last() != Some(&emb.branch_map[&e.v()]) {
            return false;
        }
        if !path.windows(2).all(|w| host.has_edge_between(w[0], w[1])) {
            return false;
        }
        for &x in &path[1..path.len() - 1] {
            if images.contains(&x) || !internal.insert(x) {
                return false;
            }
        }
    }
    true
}

/// A maximal run of pattern edges through degree-2 pattern vertices.
/// `vertices[0]` and `vertices[last]` are branch vertices (equal for a loop).
#[derive(Debug)]
struct Chain {
    vertices: Vec<usize>,
}

impl Chain {
    fn min_len(&self) -> usize {
        self.vertices.len() - 1
    }
}

struct Skeleton {
    /// Pattern vertex labels, 1-based as in [`pattern_graph`].
    labels: Vec<VertexId>,
    /// Branch vertices (pattern degree ≥ 3) in search order.
    branches: Vec<usize>,
    degree: Vec<usize>,
    chains: Vec<Chain>,
}

impl Skeleton {
    fn of(p: PatternId) -> Skeleton {
        let g = pattern_graph(p);
        let labels: Vec<VertexId> = g.vertices().collect();
        let idx = |v: VertexId| labels.binary_search(&v).expect("pattern vertex");
        let n = labels.len();
        let adj: Vec<Vec<usize>> = labels.iter().map(|&v| g.neighbors(v).map(idx).collect()).collect();
        let degree: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut branches: Vec<usize> = (0..n).filter(|&v| degree[v] >= 3).collect();
        branches.sort_by_key(|&v| (core::cmp::Reverse(degree[v]), v));
        let mut seen_edges = BTreeSet::new();
        let mut chains = Vec::new();
        for &b in &branches {
            for &first in &adj[b] {
                if seen_edges.contains(&(b.min(first), b.max(first))) {
                    continue;
                }
                let mut vertices = vec![b, first];
                let (mut prev, mut cur) = (b, first);
                while degree[cur] == 2 {
                    let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                    vertices.push(next);
                    prev = cur;
                    cur = next;
                }
                for w in vertices.windows(2) {
                    seen_edges.insert((w[0].min(w[1]), w[0].max(w[1])));
                }
                chains.push(Chain { vertices });
            }
        }
        Skeleton { labels, branches, degree, chains }
    }
}

struct Host {
    labels: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
}

struct Search<'a> {
    skeleton: &'a Skeleton,
    host: &'a Host,
    /// Pattern vertex → host vertex, for branch vertices.
    branch: Vec<usize>,
    used: Vec<bool>,
    routed: Vec<Option<Vec<usize>>>,
}

const NONE: usize = usize::MAX;

impl Search<'_> {
    fn endpoints(&self, chain: usize) -> (usize, usize) {
        let vs = &self.skeleton.chains[chain].vertices;
        (self.branch[vs[0]], self.branch[*vs.last().expect("chains are non-empty")])
    }

    fn map_branches(&mut self, k: usize) -> bool {
        let Some(&p) = self.skeleton.branches.get(k) else {
            let mut pending: Vec<usize> = (0..self.skeleton.chains.len()).collect();
            return self.route(&mut pending);
        };
        for h in 0..self.host.labels.len() {
            if self.used[h] || self.host.adj[h].len() < self.skeleton.degree[p] {
                continue;
            }
            self.used[h] = true;
            self.branch[p] = h;
            if self.map_branches(k + 1) {
                return true;
            }
            self.branch[p] = NONE;
            self.used[h] = false;
        }
        false
    }

    /// Routes all pending chains, most constrained first.
    fn route(&mut self, pending: &mut Vec<usize>) -> bool {
        if pending.is_empty() {
            return true;
        }
        let mut best = (usize::MAX, 0);
        for (slot, &c) in pending.iter().enumerate() {
            let count = self.count_paths(c, 2);
            if count == 0 {
                return false;
            }
            if count < best.0 {
                best = (count, slot);
            }
        }
        let chain = pending.swap_remove(best.1);
        let (from, _) = self.endpoints(chain);
        let mut path = vec![from];
        let found = self.extend(chain, &mut path, pending);
        if !found {
            pending.push(chain);
            let last = pending.len() - 1;
            pending.swap(best.1, last);
        }
        found
    }

    /// Depth-first extension of `path` towards the chain's far endpoint.
    fn extend(&mut self, chain: usize, path: &mut Vec<usize>, pending: &mut Vec<usize>) -> bool {
        let (_, to) = self.endpoints(chain);
        let min_len = self.skeleton.chains[chain].min_len();
        let x = *path.last().expect("path starts at a branch vertex");
        let host = self.host;
        for &y in &host.adj[x] {
            if y == to {
                // A loop needs at least three edges to close in a simple host.
                let edges = path.len();
                if edges >= min_len && (path[0] != to || edges >= 3) {
                    path.push(y);
                    self.routed[chain] = Some(path.clone());
                    if self.route(pending) {
                        return true;
                    }
                    self.routed[chain] = None;
                    path.pop();
                }
            } else if !self.used[y] {
                self.used[y] = true;
                path.push(y);
                if self.extend(chain, path, pending) {
                    return true;
                }
                path.pop();
                self.used[y] = false;
            }
        }
        false
    }

    /// Number of admissible paths for `chain`, counting no further than `limit`.
    fn count_paths(&mut self, chain: usize, limit: usize) -> usize {
        let (from, to) = self.endpoints(chain);
        let min_len = self.skeleton.chains[chain].min_len();
        let mut count = 0;
        self.count_from(from, from, to, 0, min_len, limit, &mut count);
        count
    }

    #[allow(clippy::too_many_arguments)]
    fn count_from(
        &mut self,
        start: usize,
        x: usize,
        to: usize,
        edges: usize,
        min_len: usize,
        limit: usize,
        count: &mut usize,
    ) {
        let host = self.host;
        for &y in &host.adj[x] {
            if *count >= limit {
                return;
            }
            if y == to {
                if edges + 1 >= min_len && (start != to || edges + 1 >= 3) {
                    *count += 1;
                }
            } else if !self.used[y] {
                self.used[y] = true;
                self.count_from(start, y, to, edges + 1, min_len, limit, count);
                self.used[y] = false;
            }
        }
    }

    fn embedding(&self) -> Embedding {
        let sk = self.skeleton;
        let host = |i: usize| self.host.labels[i];
        let mut branch_map = BTreeMap::new();
        let mut path_map = BTreeMap::new();
        for (c, chain) in sk.chains.iter().enumerate() {
            let path = self.routed[c].as_ref().expect("all chains routed");
            let k = chain.min_len();
            // Pattern vertex i of the chain sits at path position i; the last
            // pattern edge absorbs the remaining host path.
            for (i, &p) in chain.vertices.iter().enumerate() {
                let at = if i == k { path.len() - 1 } else { i };
                branch_map.insert(sk.labels[p], host(path[at]));
            }
            for i in 0..k {
                let (a, b) = (chain.vertices[i], chain.vertices[i + 1]);
                let end = if i + 1 == k { path.len() - 1 } else { i + 1 };
                let mut seg: Vec<VertexId> = path[i..=end].iter().map(|&h| host(h)).collect();
                let e = Edge::new(sk.labels[a], sk.labels[b]).expect("pattern edges are proper");
                if e.u() != sk.labels[a] {
                    seg.reverse();
                }
                path_map.insert(e, seg);
            }
        }
        Embedding { branch_map, path_map }
    }
}

/// Exhaustive search inside one connected host with minimum degree two.
fn search_component(host: &SimpleGraph, pattern: PatternId) -> Option<Embedding> {
    if host.cycle_rank() < pattern.cycle_rank() {
        return None;
    }
    let labels: Vec<VertexId> = host.vertices().collect();
    let idx = |v: VertexId| labels.binary_search(&v).expect("host vertex");
    let adj = labels.iter().map(|&v| host.neighbors(v).map(idx).collect()).collect();
    let host = Host { labels, adj };
    let skeleton = Skeleton::of(pattern);
    let mut search = Search {
        skeleton: &skeleton,
        host: &host,
        branch: vec![NONE; skeleton.labels.len()],
        used: vec![false; host.labels.len()],
        routed: (0..skeleton.chains.len()).map(|_| None).collect(),
    };
    search.map_branches(0).then(|| search.embedding())
}
