//! Analysis of a graph or formula and its text and JSON renderings.

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};
use twocnf_core::enumerate::CensusReport;
use twocnf_core::formula::Cnf2;
use twocnf_core::graph::{associated_graph, SimpleGraph};
use twocnf_core::minors::{Embedding, PatternId, Verdict};
use twocnf_core::simplify::{to_simple, SimplifyOutcome, SimplifyResult};
use twocnf_core::witness::{synthesize_witness, WitnessError};

use crate::dimacs::emit_dimacs;
use crate::edgelist::emit_edge_list;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub enum Subject {
    Graph(SimpleGraph),
    Formula { num_vars: u32, cnf: Cnf2 },
}

#[derive(Clone, Debug)]
pub struct Analysis {
    /// Present for formula input.
    pub simplification: Option<SimplifyOutcome>,
    /// The analysed graph; absent when simplification ended in ⊤ or ⊥.
    pub graph: Option<SimpleGraph>,
    pub verdict: Option<Verdict>,
    pub witness: Option<Cnf2>,
}

pub fn analyze(subject: &Subject, want_witness: bool) -> Result<Analysis, WitnessError> {
    let (simplification, graph) = match subject {
        Subject::Graph(g) => (None, Some(g.clone())),
        Subject::Formula { cnf, .. } => {
            let outcome = to_simple(cnf);
            let graph = match &outcome.result {
                SimplifyResult::Simple(s) => Some(associated_graph(s)?),
                _ => None,
            };
            (Some(outcome), graph)
        }
    };
    let verdict = graph.as_ref().map(twocnf_core::minors::decide_membership);
    let witness = match (&graph, &verdict) {
        (Some(g), Some(v)) if want_witness && v.is_in_u() => synthesize_witness(g)?,
        _ => None,
    };
    Ok(Analysis { simplification, graph, verdict, witness })
}

fn outcome_name(r: &SimplifyResult) -> &'static str {
    match r {
        SimplifyResult::Unsatisfiable => "UNSAT",
        SimplifyResult::TriviallyTrue => "TRIVIALLY-TRUE",
        SimplifyResult::Simple(_) => "SIMPLE",
    }
}

/// DIMACS text of a witness for `g`; variable `i` is vertex `i`.
pub fn witness_dimacs(witness: &Cnf2, g: &SimpleGraph) -> String {
    let mut comments = vec!["unsatisfiable witness supported on the input graph".to_string()];
    comments.extend(g.vertices().map(|v| format!("variable {} = vertex {}", v.index(), v.index())));
    emit_dimacs(witness, g.max_vertex().map_or(0, |v| v.index()), &comments)
}

pub fn embedding_lines(pattern: PatternId, e: &Embedding) -> Vec<String> {
    let mut lines = vec![format!("pattern: {pattern}")];
    for (p, h) in &e.branch_map {
        lines.push(format!("branch {} -> {}", p.index(), h.index()));
    }
    for (edge, path) in &e.path_map {
        let hops: Vec<String> = path.iter().map(|v| v.index().to_string()).collect();
        lines.push(format!("path {}-{}: {}", edge.u().index(), edge.v().index(), hops.join(" ")));
    }
    lines
}

impl Analysis {
    /// Comment lines (each starting `c `), then the witness if any.
    pub fn to_text(&self) -> String {
        let mut lines = Vec::new();
        if let Some(o) = &self.simplification {
            lines.push(format!("simplification: {}", outcome_name(&o.result)));
            if !o.trace.is_empty() {
                let steps: Vec<String> = o.trace.iter().map(|s| s.to_string()).collect();
                lines.push(format!("trace: {}", steps.join(", ")));
            }
        }
        if let Some(g) = &self.graph {
            lines.push(format!("graph: {} vertices, {} edges", g.vertex_count(), g.edge_count()));
        }
        match &self.verdict {
            Some(Verdict::InU { pattern, embedding }) => {
                lines.push("verdict: InU".into());
                lines.extend(embedding_lines(*pattern, embedding));
            }
            Some(Verdict::NotInU(reason)) => {
                lines.push("verdict: NotInU".into());
                lines.push(format!("reason: {reason}"));
            }
            None => lines.push("verdict: none".into()),
        }
        let mut out = String::new();
        for l in lines {
            let _ = writeln!(out, "c {l}");
        }
        if let (Some(w), Some(g)) = (&self.witness, &self.graph) {
            out.push_str(&witness_dimacs(w, g));
        }
        out
    }

    pub fn to_json(&self, witness_path: Option<String>, include_witness: bool) -> AnalysisJson {
        let (verdict, reason, pattern, embedding) = match &self.verdict {
            Some(Verdict::InU { pattern, embedding }) => {
                (Some("InU"), None, Some(pattern.name()), Some(EmbeddingJson::from(embedding)))
            }
            Some(Verdict::NotInU(r)) => (Some("NotInU"), Some(r.name()), None, None),
            None => (None, None, None, None),
        };
        let witness = match (&self.witness, &self.graph) {
            (Some(w), Some(g)) if include_witness => Some(witness_dimacs(w, g)),
            _ => None,
        };
        AnalysisJson {
            format_version: FORMAT_VERSION,
            simplification: self.simplification.as_ref().map(|o| SimplificationJson {
                outcome: outcome_name(&o.result),
                trace: o.trace.iter().map(|s| s.to_string()).collect(),
            }),
            graph: self.graph.as_ref().map(GraphJson::from),
            verdict,
            reason,
            pattern,
            embedding,
            witness,
            witness_path,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisJson {
    pub format_version: u32,
    pub simplification: Option<SimplificationJson>,
    pub graph: Option<GraphJson>,
    pub verdict: Option<&'static str>,
    pub reason: Option<&'static str>,
    pub pattern: Option<&'static str>,
    pub embedding: Option<EmbeddingJson>,
    pub witness: Option<String>,
    pub witness_path: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplificationJson {
    pub outcome: &'static str,
    pub trace: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphJson {
    pub vertices: Vec<u32>,
    pub edges: Vec<[u32; 2]>,
    pub hash: String,
}

impl From<&SimpleGraph> for GraphJson {
    fn from(g: &SimpleGraph) -> Self {
        GraphJson {
            vertices: g.vertices().map(|v| v.index()).collect(),
            edges: g.edges().map(|e| [e.u().index(), e.v().index()]).collect(),
            hash: graph_hash(g),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchJson {
    pub pattern: u32,
    pub host: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct PathJson {
    pub pattern_edge: [u32; 2],
    pub path: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingJson {
    pub branch_map: Vec<BranchJson>,
    pub paths: Vec<PathJson>,
}

impl From<&Embedding> for EmbeddingJson {
    fn from(e: &Embedding) -> Self {
        EmbeddingJson {
            branch_map: e.branch_map.iter().map(|(p, h)| BranchJson { pattern: p.index(), host: h.index() }).collect(),
            paths: e
                .path_map
                .iter()
                .map(|(edge, path)| PathJson {
                    pattern_edge: [edge.u().index(), edge.v().index()],
                    path: path.iter().map(|v| v.index()).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorJson {
    pub format_version: u32,
    pub pattern: &'static str,
    pub found: bool,
    pub embedding: Option<EmbeddingJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusJson {
    pub format_version: u32,
    pub graph_hash: String,
    pub vertices: usize,
    pub edges: usize,
    pub total: u64,
    pub sat: u64,
    pub unsat: u64,
    pub example_unsat: Option<String>,
}

impl From<&CensusReport> for CensusJson {
    fn from(r: &CensusReport) -> Self {
        CensusJson {
            format_version: FORMAT_VERSION,
            graph_hash: graph_hash(&r.graph),
            vertices: r.graph.vertex_count(),
            edges: r.graph.edge_count(),
            total: r.total,
            sat: r.sat_count,
            unsat: r.unsat_count,
            example_unsat: r.example_unsat.as_ref().map(|s| s.to_string()),
        }
    }
}

pub fn census_text(r: &CensusReport) -> String {
    let mut out = format!(
        "graph: {} vertices, {} edges, hash {}\n{} total, {} sat, {} unsat\n",
        r.graph.vertex_count(),
        r.graph.edge_count(),
        graph_hash(&r.graph),
        r.total,
        r.sat_count,
        r.unsat_count
    );
    if let Some(s) = &r.example_unsat {
        let _ = writeln!(out, "first unsat: {s}");
    }
    out
}

/// SHA-256 of the labeled graph's edge-list form, in hex.
pub fn graph_hash(g: &SimpleGraph) -> String {
    Sha256::digest(emit_edge_list(g).as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}
