//! DIMACS CNF reading and writing for formulas with clauses of length at
//! most two.

use std::fmt::Write as _;

use thiserror::Error;
use twocnf_core::formula::{reduce, Cnf2, FormulaError, Lit, RawLit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: clause has {len} distinct literals; at most 2 are supported")]
    ClauseTooLong { line: usize, len: usize },
    #[error("line {line}: literal {literal} exceeds the {declared} declared variables")]
    VariableOutOfRange { line: usize, literal: i64, declared: u32 },
}

fn parse_error(line: usize, reason: impl Into<String>) -> DimacsError {
    DimacsError::Parse { line, reason: reason.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dimacs {
    /// Variable count from the header.
    pub num_vars: u32,
    /// Clauses as written, before reduction.
    pub raw: Vec<Vec<i64>>,
    pub cnf: Cnf2,
}

/// Parses a DIMACS CNF file and reduces it.
///
/// Clauses may span lines; each ends at `0`. A `%` line ends the input.
/// The clause count in the header must match.
pub fn parse_dimacs(text: &str) -> Result<Dimacs, DimacsError> {
    let mut header: Option<(u32, usize, usize)> = None;
    let mut raw: Vec<Vec<i64>> = Vec::new();
    let mut starts: Vec<usize> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut current_start = 0;
    let mut last_line = 0;
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        last_line = n;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(parse_error(n, "second problem line"));
            }
            if !raw.is_empty() || !current.is_empty() {
                return Err(parse_error(n, "problem line after clauses"));
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let [_, "cnf", vars, clauses] = fields.as_slice() else {
                return Err(parse_error(n, "expected `p cnf <variables> <clauses>`"));
            };
            let vars = vars.parse::<u32>().map_err(|_| parse_error(n, "bad variable count"))?;
            let clauses = clauses.parse::<usize>().map_err(|_| parse_error(n, "bad clause count"))?;
            header = Some((vars, clauses, n));
            continue;
        }
        let Some((declared, _, _)) = header else {
            return Err(parse_error(n, "clause before the problem line"));
        };
        for token in trimmed.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| parse_error(n, format!("not an integer: `{token}`")))?;
            if value == 0 {
                raw.push(std::mem::take(&mut current));
                starts.push(if current_start == 0 { n } else { current_start });
                current_start = 0;
                continue;
            }
            if value.unsigned_abs() > u64::from(declared) {
                return Err(DimacsError::VariableOutOfRange { line: n, literal: value, declared });
            }
            if current.is_empty() {
                current_start = n;
            }
            current.push(value);
        }
    }
    let Some((num_vars, declared_clauses, header_line)) = header else {
        return Err(parse_error(last_line.max(1), "missing problem line `p cnf <variables> <clauses>`"));
    };
    if !current.is_empty() {
        return Err(parse_error(last_line, "last clause is not terminated by 0"));
    }
    if raw.len() != declared_clauses {
        return Err(parse_error(
            header_line,
            format!("header declares {declared_clauses} clauses but {} were found", raw.len()),
        ));
    }
    let lits: Vec<Vec<RawLit>> = raw
        .iter()
        .map(|c| c.iter().map(|&v| RawLit::Lit(Lit::from_dimacs(v).expect("zero ends a clause"))).collect())
        .collect();
    for (clause, &line) in lits.iter().zip(&starts) {
        if let Err(FormulaError::ClauseTooLong(len)) = reduce(std::slice::from_ref(clause)) {
            return Err(DimacsError::ClauseTooLong { line, len });
        }
    }
    let cnf = reduce(&lits).expect("every clause was checked");
    Ok(Dimacs { num_vars, raw, cnf })
}

/// Writes `s` in canonical clause order. `num_vars` is raised to the largest
/// variable present if needed. Each comment becomes a `c` line.
pub fn emit_dimacs(s: &Cnf2, num_vars: u32, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "c {line}").map(|_| ());
        }
    }
    let vars = num_vars.max(s.max_var().map_or(0, |v| v.index()));
    match s {
        Cnf2::False => {
            let _ = writeln!(out, "p cnf {vars} 1\n0");
        }
        _ => {
            let _ = writeln!(out, "p cnf {vars} {}", s.len());
            for clause in s.clauses() {
                for lit in clause.literals() {
                    let _ = write!(out, "{} ", lit.to_dimacs());
                }
                out.push_str("0\n");
            }
        }
    }
    out
}
