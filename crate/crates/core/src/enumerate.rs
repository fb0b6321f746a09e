//! Exhaustive census of the simple 2-CNFs on a graph: each edge carries one
//! of four clauses, so a graph with `m` edges supports `4^m` of them.
//!
//! Polarity vectors are numbered in base 4 with the first edge (in
//! canonical order) as the most significant digit, so numeric order and
//! lexicographic order coincide.

use alloc::vec::Vec;
use core::ops::Range;

use thiserror::Error;

use crate::formula::{Clause, Cnf2};
use crate::graph::{Edge, SimpleGraph, VertexId};
use crate::sat::{lit_code, DenseSolver, LitCode};

pub mod corpus;

pub const DEFAULT_EDGE_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("graph has {edges} edges, above the cap of {cap}")]
    TooManyEdges { edges: usize, cap: usize },
}

/// The clause placed on a canonical edge `(u, v)`, `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgePolarity {
    /// `(u ∨ v)`
    PP,
    /// `(u ∨ ¬v)`
    PN,
    /// `(¬u ∨ v)`
    NP,
    /// `(¬u ∨ ¬v)`
    NN,
}

impl EdgePolarity {
    pub const ALL: [EdgePolarity; 4] = [EdgePolarity::PP, EdgePolarity::PN, EdgePolarity::NP, EdgePolarity::NN];

    pub fn from_digit(d: u64) -> EdgePolarity {
        Self::ALL[(d & 3) as usize]
    }

    /// Whether the literal on `u`, and on `v`, is negated.
    pub fn negations(self) -> (bool, bool) {
        match self {
            EdgePolarity::PP => (false, false),
            EdgePolarity::PN => (false, true),
            EdgePolarity::NP => (true, false),
            EdgePolarity::NN => (true, true),
        }
    }

    pub fn clause(self, e: Edge) -> Clause {
        let (nu, nv) = self.negations();
        let u = if nu { e.u().negative() } else { e.u().positive() };
        let v = if nv { e.v().negative() } else { e.v().positive() };
        Clause::pair(u, v).expect("edge endpoints differ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub graph: SimpleGraph,
    pub total: u64,
    pub sat_count: u64,
    pub unsat_count: u64,
    /// The first unsatisfiable formula in enumeration order.
    pub example_unsat: Option<Cnf2>,
}

/// Partial counts over a range of polarity vectors. Tallies of disjoint
/// ranges combine with [`CensusTally::merge`] in any order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CensusTally {
    pub sat: u64,
    pub unsat: u64,
    pub first_unsat: Option<u64>,
}

impl CensusTally {
    pub fn merge(self, other: CensusTally) -> CensusTally {
        let first_unsat = match (self.first_unsat, other.first_unsat) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        CensusTally { sat: self.sat + other.sat, unsat: self.unsat + other.unsat, first_unsat }
    }
}

/// A graph prepared for enumeration: dense vertex indices and edges in
/// canonical order.
#[derive(Clone, Debug)]
pub struct PolaritySpace {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    dense: Vec<(usize, usize)>,
}

impl PolaritySpace {
    pub fn new(g: &SimpleGraph, cap: usize) -> Result<PolaritySpace, EnumerateError> {
        let edges: Vec<Edge> = g.edges().collect();
        if edges.len() > cap {
            return Err(EnumerateError::TooManyEdges { edges: edges.len(), cap });
        }
        let vertices: Vec<VertexId> = g.vertices().collect();
        let idx = |v: VertexId| vertices.binary_search(&v).expect("edge endpoint is a vertex");
        let dense = edges.iter().map(|e| (idx(e.u()), idx(e.v()))).collect();
        Ok(PolaritySpace { vertices, edges, dense })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `4^|E|`.
    pub fn size(&self) -> u64 {
        1u64 << (2 * self.edges.len())
    }

    pub fn polarity(&self, index: u64, edge: usize) -> EdgePolarity {
        let shift = 2 * (self.edges.len() - 1 - edge);
        EdgePolarity::from_digit(index >> shift)
    }

    pub fn formula(&self, index: u64) -> Cnf2 {
        Cnf2::from_clauses(self.edges.iter().enumerate().map(|(k, &e)| self.polarity(index, k).clause(e)))
    }

    /// Classifies every vector in `range`, reusing `solver` scratch space.
    pub fn tally(&self, range: Range<u64>, solver: &mut DenseSolver) -> CensusTally {
        let mut tally = CensusTally::default();
        let mut clauses: Vec<(LitCode, LitCode)> = Vec::with_capacity(self.edges.len());
        for index in range {
            clauses.clear();
            for (k, &(u, v)) in self.dense.iter().enumerate() {
                let (nu, nv) = self.polarity(index, k).negations();
                clauses.push((lit_code(u, nu), lit_code(v, nv)));
            }
            if solver.is_satisfiable(self.vertices.len(), &clauses) {
                tally.sat += 1;
            } else {
                tally.unsat += 1;
                tally.first_unsat.get_or_insert(index);
            }
        }
        tally
    }

    /// Index of the first unsatisfiable vector, stopping as soon as one is
    /// found.
    pub fn first_unsat(&self, solver: &mut DenseSolver) -> Option<u64> {
        let mut clauses: Vec<(LitCode, LitCode)> = Vec::with_capacity(self.edges.len());
        (0..self.size()).find(|&index| {
            clauses.clear();
            for (k, &(u, v)) in self.dense.iter().enumerate() {
                let (nu, nv) = self.polarity(index, k).negations();
                clauses.push((lit_code(u, nu), lit_code(v, nv)));
            }
            !solver.is_satisfiable(self.vertices.len(), &clauses)
        })
    }

    pub fn report(&self, g: &SimpleGraph, tally: CensusTally) -> CensusReport {
        CensusReport {
            graph: g.clone(),
            total: tally.sat + tally.unsat,
            sat_count: tally.sat,
            unsat_count: tally.unsat,
            example_unsat: tally.first_unsat.map(|i| self.formula(i)),
        }
    }
}

/// Classifies all `4^|E|` simple 2-CNFs supported on `g`.
pub fn census(g: &SimpleGraph, cap: usize) -> Result<CensusReport, EnumerateError> {
    let space = PolaritySpace::new(g, cap)?;
    let tally = space.tally(0..space.size(), &mut DenseSolver::new());
    Ok(space.report(g, tally))
}

/// True iff some simple 2-CNF supported on `g` is unsatisfiable.
pub fn is_in_u_bruteforce(g: &SimpleGraph, cap: usize) -> Result<bool, EnumerateError> {
    let space = PolaritySpace::new(g, cap)?;
    Ok(space.first_unsat(&mut DenseSolver::new()).is_some())
}

/// True iff `g` is in U but no single edge deletion, vertex deletion or
/// smoothing of a degree-2 vertex leaves a graph in U.
///
/// Membership is closed under supergraphs, so single deletions cover every
/// proper subgraph.
pub fn minimality_check(g: &SimpleGraph, cap: usize) -> Result<bool, EnumerateError> {
    if !is_in_u_bruteforce(g, cap)? {
        return Ok(false);
    }
    for e in g.edges() {
        let mut h = g.clone();
        h.remove_edge(e);
        if is_in_u_bruteforce(&h, cap)? {
            return Ok(false);
        }
    }
    for v in g.vertices() {
        let mut h = g.clone();
        h.remove_vertex(v);
        if is_in_u_bruteforce(&h, cap)? {
            return Ok(false);
        }
    }
    for h in smoothings(g) {
        if is_in_u_bruteforce(&h, cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Graphs obtained by replacing a degree-2 vertex and its two edges with a
/// single edge, where that keeps the graph simple.
pub fn smoothings(g: &SimpleGraph) -> Vec<SimpleGraph> {
    g.vertices()
        .filter(|&x| g.degree(x) == 2)
        .filter_map(|x| {
            let mut ns = g.neighbors(x);
            let (a, b) = (ns.next()?, ns.next()?);
            if g.has_edge_between(a, b) {
                return None;
            }
            let mut h = g.clone();
            h.remove_vertex(x);
            h.add_edge(Edge::new(a, b)?);
            Some(h)
        })
        .collect()
}
