//! 2-SAT by strongly connected components of the implication graph.
//!
//! Literal nodes are dense: variable `i` (0-based) owns nodes `2i` (positive)
//! and `2i + 1` (negative). A clause `(a ∨ b)` contributes arcs `¬a → b` and
//! `¬b → a`; a unit `(a)` is the clause `(a ∨ a)`.

use alloc::vec::Vec;

use crate::formula::{Assignment, Cnf2, Lit, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    Satisfiable(Assignment),
    /// A variable whose two literals share a strongly connected component.
    /// `None` only for the constant ⊥, which has no variable to blame.
    Unsatisfiable(Option<Var>),
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Satisfiable(_))
    }

    pub fn is_unsat(&self) -> bool {
        !self.is_sat()
    }
}

/// Dense literal code: `2 * var + negated`.
pub type LitCode = u32;

pub fn lit_code(var: usize, negated: bool) -> LitCode {
    (var as u32) << 1 | negated as u32
}

/// Reusable scratch space for repeated solving of small dense instances.
#[derive(Default, Debug)]
pub struct DenseSolver {
    start: Vec<u32>,
    targets: Vec<u32>,
    index: Vec<u32>,
    low: Vec<u32>,
    comp: Vec<u32>,
    on_stack: Vec<bool>,
    stack: Vec<u32>,
    frames: Vec<(u32, u32)>,
}

const UNVISITED: u32 = u32::MAX;

impl DenseSolver {
    pub fn new() -> Self {
        Self::default()
    }

    fn build(&mut self, num_vars: usize, clauses: &[(LitCode, LitCode)]) {
        let nodes = 2 * num_vars;
        self.start.clear();
        self.start.resize(nodes + 1, 0);
        for &(a, b) in clauses {
            self.start[(a ^ 1) as usize + 1] += 1;
            self.start[(b ^ 1) as usize + 1] += 1;
        }
        for i in 0..nodes {
            self.start[i + 1] += self.start[i];
        }
        self.targets.clear();
        self.targets.resize(2 * clauses.len(), 0);
        // Fill using a moving cursor per node; `index` doubles as the cursor.
        self.index.clear();
        self.index.extend_from_slice(&self.start[..nodes]);
        for &(a, b) in clauses {
            let na = (a ^ 1) as usize;
            self.targets[self.index[na] as usize] = b;
            self.index[na] += 1;
            let nb = (b ^ 1) as usize;
            self.targets[self.index[nb] as usize] = a;
            self.index[nb] += 1;
        }
    }

    /// Tarjan's algorithm, iterative. Component ids come out in reverse
    /// topological order of the condensation.
    fn strongly_connected(&mut self, nodes: usize) {
        self.index.clear();
        self.index.resize(nodes, UNVISITED);
        self.low.clear();
        self.low.resize(nodes, 0);
        self.comp.clear();
        self.comp.resize(nodes, UNVISITED);
        self.on_stack.clear();
        self.on_stack.resize(nodes, false);
        self.stack.clear();
        let mut counter = 0u32;
        let mut components = 0u32;
        for root in 0..nodes as u32 {
            if self.index[root as usize] != UNVISITED {
                continue;
            }
            self.frames.push((root, self.start[root as usize]));
            self.index[root as usize] = counter;
            self.low[root as usize] = counter;
            counter += 1;
            self.stack.push(root);
            self.on_stack[root as usize] = true;
            while let Some(&mut (node, ref mut cursor)) = self.frames.last_mut() {
                let end = self.start[node as usize + 1];
                if *cursor < end {
                    let next = self.targets[*cursor as usize];
                    *cursor += 1;
                    let n = next as usize;
                    if self.index[n] == UNVISITED {
                        self.index[n] = counter;
                        self.low[n] = counter;
                        counter += 1;
                        self.stack.push(next);
                        self.on_stack[n] = true;
                        self.frames.push((next, self.start[n]));
                    } else if self.on_stack[n] {
                        let m = self.low[node as usize].min(self.index[n]);
                        self.low[node as usize] = m;
                    }
                    continue;
                }
                self.frames.pop();
                if let Some(&(parent, _)) = self.frames.last() {
                    let m = self.low[parent as usize].min(self.low[node as usize]);
                    self.low[parent as usize] = m;
                }
                if self.low[node as usize] == self.index[node as usize] {
                    loop {
                        let top = self.stack.pop().expect("tarjan stack underflow");
                        self.on_stack[top as usize] = false;
                        self.comp[top as usize] = components;
                        if top == node {
                            break;
                        }
                    }
                    components += 1;
                }
            }
        }
    }

    /// Decides a dense instance; on success `model()` reads the assignment.
    pub fn solve(&mut self, num_vars: usize, clauses: &[(LitCode, LitCode)]) -> Result<(), usize> {
        self.build(num_vars, clauses);
        self.strongly_connected(2 * num_vars);
        match (0..num_vars).find(|&v| self.comp[2 * v] == self.comp[2 * v + 1]) {
            Some(v) => Err(v),
            None => Ok(()),
        }
    }

    pub fn is_satisfiable(&mut self, num_vars: usize, clauses: &[(LitCode, LitCode)]) -> bool {
        self.solve(num_vars, clauses).is_ok()
    }

    /// Value of dense variable `v` after a successful `solve`: true iff the
    /// component of `v` comes after that of `¬v` topologically.
    pub fn model_value(&self, v: usize) -> bool {
        self.comp[2 * v] < self.comp[2 * v + 1]
    }
}

/// Decides a reduced CNF with clauses of length at most two.
pub fn solve(s: &Cnf2) -> SolveResult {
    match s {
        Cnf2::True => return SolveResult::Satisfiable(Assignment::new()),
        Cnf2::False => return SolveResult::Unsatisfiable(None),
        Cnf2::Nontrivial(_) => {}
    }
    let vars: Vec<Var> = s.variables().into_iter().collect();
    let dense = |l: Lit| -> LitCode {
        let i = vars.binary_search(&l.var()).expect("variable collected above");
        lit_code(i, !l.is_positive())
    };
    let clauses: Vec<(LitCode, LitCode)> = s
        .clauses()
        .map(|c| {
            let mut lits = c.literals();
            let a = lits.next().expect("clauses are non-empty");
            let b = lits.next().unwrap_or(a);
            (dense(a), dense(b))
        })
        .collect();
    let mut solver = DenseSolver::new();
    match solver.solve(vars.len(), &clauses) {
        Ok(()) => SolveResult::Satisfiable(
            vars.iter().enumerate().map(|(i, &v)| (v, solver.model_value(i))).collect(),
        ),
        Err(i) => SolveResult::Unsatisfiable(Some(vars[i])),
    }
}

pub fn is_satisfiable(s: &Cnf2) -> bool {
    solve(s).is_sat()
}

pub fn check_model(s: &Cnf2, m: &Assignment) -> bool {
    crate::formula::apply_assignment(s, m).is_true()
}
