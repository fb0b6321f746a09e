//! Unsatisfiable simple 2-CNFs supported on a prescribed graph.
//!
//! Four base formulas cover the four minimal graphs. The remaining
//! operations move a formula along a graph operation while keeping it
//! unsatisfiable: subdividing an edge, undoing a subdivision, contracting an
//! edge outside every triangle, and adding edges.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use thiserror::Error;

use crate::formula::{Clause, Cnf2, Lit, RawLit, Var};
use crate::graph::{associated_graph, Edge, GraphError, SimpleGraph, VertexId};
use crate::minors::{decide_membership, PatternId, Verdict};
use crate::sat::is_satisfiable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("edge {0} carries no clause")]
    EdgeAbsentInSupport(Edge),
    #[error("edge {0} carries more than one clause")]
    NotSimple(Edge),
    #[error("variable {0} already occurs in the CNF")]
    VariableCollision(Var),
    #[error("variable {0} does not occur in exactly two clauses, one with each given neighbor")]
    DegreeNotTwo(Var),
    #[error("edge {0} already carries a clause")]
    EdgeAlreadyPresent(Edge),
    #[error("edge {0} lies in a triangle")]
    EdgeInTriangle(Edge),
    #[error("support of the CNF is not a subgraph of the target graph")]
    NotASubgraph,
    #[error("constructed CNF failed verification: {0}")]
    InternalVerificationFailed(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseFormula {
    pub pattern: PatternId,
    pub cnf: Cnf2,
}

/// The unsatisfiable formula on the labeled pattern graph, variables a..f
/// read as 1..6.
pub fn base_formula(p: PatternId) -> BaseFormula {
    let clauses: &[[i64; 2]] = match p {
        PatternId::VConfig => &[[1, 2], [-1, 3], [-2, 3], [-3, 4], [-3, 5], [-4, -5]],
        PatternId::PConfig => &[[1, 2], [-1, 3], [-2, 3], [-3, 4], [-4, 5], [-4, 6], [-5, -6]],
        PatternId::K4 => &[[1, 2], [1, 3], [-1, 4], [-2, -3], [2, -4], [3, -4]],
        PatternId::K113 => &[[1, 2], [-1, 4], [2, 3], [-2, 4], [-2, 5], [-3, -4], [-4, -5]],
    };
    let cnf = Cnf2::from_dimacs_clauses(clauses).expect("base clauses are well formed");
    BaseFormula { pattern: p, cnf }
}

fn pair_clause(a: Lit, b: Lit) -> Clause {
    Clause::pair(a, b).expect("literals over distinct variables")
}

/// The unique clause over `e`, split into its literal on `e.u()` and on `e.v()`.
fn edge_clause(s: &Cnf2, e: Edge) -> Result<(Clause, Lit, Lit), WitnessError> {
    let mut found = s.clauses().filter(|c| c.variables() == Some(e.endpoints()));
    let clause = *found.next().ok_or(WitnessError::EdgeAbsentInSupport(e))?;
    if found.next().is_some() {
        return Err(WitnessError::NotSimple(e));
    }
    let lu = clause.literal_on(e.u()).expect("clause spans the edge");
    let lv = clause.literal_on(e.v()).expect("clause spans the edge");
    Ok((clause, lu, lv))
}

fn fresh(s: &Cnf2, w: Var) -> Result<(), WitnessError> {
    if s.variables().contains(&w) {
        Err(WitnessError::VariableCollision(w))
    } else {
        Ok(())
    }
}

/// Replaces the clause `(lu ∨ lv)` on `e` by `(lu ∨ w) ∧ (¬w ∨ lv)`.
///
/// This is the clause pair `(u ∨ w) ∧ (¬w ∨ v)` after flipping `u` and `v`
/// to make the original clause positive and flipping them back.
pub fn lift_subdivision(s: &Cnf2, e: Edge, w: Var) -> Result<Cnf2, WitnessError> {
    let (clause, lu, lv) = edge_clause(s, e)?;
    fresh(s, w)?;
    let kept = s.clauses().filter(|&&c| c != clause).copied();
    Ok(Cnf2::from_clauses(kept.chain([pair_clause(lu, w.positive()), pair_clause(w.negative(), lv)])))
}

/// Inverse of [`lift_subdivision`]: removes `w`, whose only clauses are one
/// with `u` and one with `v`, and joins `u` and `v` directly.
///
/// With `(lu ∨ ±w)` and `(lv ∨ ±w)` the result carries `(lu ∨ lv)`. For
/// opposite signs of `w` that clause is the resolvent; for equal signs the
/// rest of the CNF is already unsatisfiable on its own whenever the input
/// is, so adding the clause keeps it so.
pub fn unsubdivide_witness(s: &Cnf2, w: Var, u: Var, v: Var) -> Result<Cnf2, WitnessError> {
    let on_w: Vec<Clause> = s.clauses().filter(|c| c.literal_on(w).is_some()).copied().collect();
    let partner = |x: Var| on_w.iter().filter_map(|c| c.partner_of(w)).find(|l| l.var() == x);
    let (Some(lu), Some(lv), 2) = (partner(u), partner(v), on_w.len()) else {
        return Err(WitnessError::DegreeNotTwo(w));
    };
    if u == v {
        return Err(WitnessError::DegreeNotTwo(w));
    }
    let uv = Edge::new(u, v).expect("u and v differ");
    if s.clauses().any(|c| c.variables() == Some(uv.endpoints())) {
        return Err(WitnessError::EdgeAlreadyPresent(uv));
    }
    let kept = s.clauses().filter(|c| c.literal_on(w).is_none()).copied();
    Ok(Cnf2::from_clauses(kept.chain([pair_clause(lu, lv)])))
}

/// Conjoins `(x ∨ y)` for every edge of `h` missing from the support of `s`.
///
/// Isolated vertices of `h` cannot carry a clause and are ignored.
pub fn extend_to_supergraph(s: &Cnf2, h: &SimpleGraph) -> Result<Cnf2, WitnessError> {
    let g = associated_graph(s)?;
    if !g.is_subgraph_of(h) {
        return Err(WitnessError::NotASubgraph);
    }
    let filler = h.edges().filter(|&e| !g.contains_edge(e)).map(|e| pair_clause(e.u().positive(), e.v().positive()));
    Ok(Cnf2::from_clauses(s.clauses().copied().chain(filler)))
}

/// Contracts the edge `e = (u, v)` into the fresh variable `w`.
///
/// With `(lu ∨ lv)` the clause on `e`, every other clause `(x ∨ lu)` or
/// `(x ∨ ¬lv)` becomes `(x ∨ w)` and every `(x ∨ ¬lu)` or `(x ∨ lv)` becomes
/// `(x ∨ ¬w)`; that is, `u := w` and `v := ¬w` after making the clause on
/// `e` positive.
pub fn contract_witness(s: &Cnf2, e: Edge, w: Var) -> Result<Cnf2, WitnessError> {
    let (clause, lu, lv) = edge_clause(s, e)?;
    fresh(s, w)?;
    let g = associated_graph(s)?;
    if g.in_triangle(e) {
        return Err(WitnessError::EdgeInTriangle(e));
    }
    let rest = Cnf2::from_clauses(s.clauses().filter(|&&c| c != clause).copied());
    Ok(rest.rewrite(|l| {
        let to_w = if l.var() == e.u() {
            l == lu
        } else if l.var() == e.v() {
            l != lv
        } else {
            return RawLit::Lit(l);
        };
        RawLit::Lit(if to_w { w.positive() } else { w.negative() })
    }))
}

/// Base formula of `pattern` with its variables renamed through `map`.
fn relabel(pattern: PatternId, map: &BTreeMap<VertexId, VertexId>) -> Cnf2 {
    base_formula(pattern).cnf.rewrite(|l| RawLit::Lit(map[&l.var()].lit(l.sign())))
}

/// An unsatisfiable simple 2-CNF supported exactly on `g` (ignoring isolated
/// vertices), or `None` when no such formula exists.
///
/// The base formula of the pattern found by [`decide_membership`] is renamed
/// onto the branch vertices, subdivided along each embedding path, extended
/// by positive clauses to the rest of `g`, and checked with the solver.
pub fn synthesize_witness(g: &SimpleGraph) -> Result<Option<Cnf2>, WitnessError> {
    let Verdict::InU { pattern, embedding } = decide_membership(g) else {
        return Ok(None);
    };
    let mut s = relabel(pattern, &embedding.branch_map);
    for path in embedding.path_map.values() {
        let mut path = path.clone();
        if path.last() < path.first() {
            path.reverse();
        }
        let end = *path.last().expect("paths have two ends");
        for k in 1..path.len() - 1 {
            let e = Edge::new(path[k - 1], end).expect("path vertices are distinct");
            s = lift_subdivision(&s, e, path[k])?;
        }
    }
    let s = extend_to_supergraph(&s, g)?;
    if associated_graph(&s)? != g.without_isolated() {
        return Err(WitnessError::InternalVerificationFailed("support differs from the input graph"));
    }
    if is_satisfiable(&s) {
        return Err(WitnessError::InternalVerificationFailed("solver found a model"));
    }
    Ok(Some(s))
}
