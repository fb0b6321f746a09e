//! Rewriting a reduced CNF with clauses of length at most two into an
//! equisatisfiable simple 2-CNF (at most one clause per variable pair and no
//! unit clauses), or into a constant.
//!
//! Every rewrite is a substitution and is recorded, so a model of the result
//! can be carried back with [`lift_model`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use thiserror::Error;

use crate::formula::{substitute, Assignment, Clause, Cnf2, Lit, Replacement, SubstitutionStep, Var};
use crate::sat::check_model;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplifyError {
    #[error("pair ({0}, {1}) carries {2} clauses; collapsing needs at least 2")]
    PreconditionViolated(Var, Var, usize),
    #[error("the model does not satisfy the simplified CNF")]
    ModelInvalid,
    #[error("the CNF was found unsatisfiable; there is no model to lift")]
    Unsatisfiable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplifyResult {
    Unsatisfiable,
    TriviallyTrue,
    Simple(Cnf2),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplifyOutcome {
    pub original: Cnf2,
    pub result: SimplifyResult,
    pub trace: Vec<SubstitutionStep>,
}

impl SimplifyOutcome {
    /// The CNF the outcome stands for: ⊥, ⊤ or the simple result.
    pub fn simplified(&self) -> Cnf2 {
        match &self.result {
            SimplifyResult::Unsatisfiable => Cnf2::False,
            SimplifyResult::TriviallyTrue => Cnf2::True,
            SimplifyResult::Simple(s) => s.clone(),
        }
    }
}

/// Number of clauses over exactly the variables `a` and `b` (0 to 4).
pub fn count_pair_clauses(s: &Cnf2, a: Var, b: Var) -> usize {
    let key = if a < b { (a, b) } else { (b, a) };
    s.clauses().filter(|c| c.variables() == Some(key)).count()
}

fn pair_counts(s: &Cnf2) -> BTreeMap<(Var, Var), usize> {
    let mut counts = BTreeMap::new();
    for pair in s.clauses().filter_map(Clause::variables) {
        *counts.entry(pair).or_insert(0) += 1;
    }
    counts
}

fn apply(s: Cnf2, steps: &[SubstitutionStep]) -> Cnf2 {
    steps.iter().fold(s, |acc, &step| substitute(&acc, step))
}

/// Unit propagation until no unit clause is left or a contradiction shows.
pub fn eliminate_units(s: &Cnf2) -> (Cnf2, Vec<SubstitutionStep>) {
    let mut cur = s.clone();
    let mut trace = Vec::new();
    loop {
        let units: Vec<Lit> = cur
            .clauses()
            .filter_map(|c| match c {
                Clause::Unit(l) => Some(*l),
                Clause::Pair(..) => None,
            })
            .collect();
        let Some(&first) = units.first() else {
            return (cur, trace);
        };
        if units.windows(2).any(|w| w[0].var() == w[1].var()) {
            return (Cnf2::False, trace);
        }
        let step = SubstitutionStep::assign(first.var(), first.is_positive());
        trace.push(step);
        cur = substitute(&cur, step);
    }
}

/// Removes the pair `(a, b)` when it carries two or more clauses.
pub fn collapse_pair(s: &Cnf2, a: Var, b: Var) -> Result<(Cnf2, Vec<SubstitutionStep>), SimplifyError> {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    let on_pair: Vec<(Lit, Lit)> = s
        .clauses()
        .filter_map(|c| match *c {
            Clause::Pair(x, y) if x.var() == a && y.var() == b => Some((x, y)),
            _ => None,
        })
        .collect();
    let steps: Vec<SubstitutionStep> = match on_pair.as_slice() {
        [_, _, _, _] => return Ok((Cnf2::False, Vec::new())),
        [_, _, _] => {
            // Exactly one combination is missing; falsifying it satisfies the
            // other three.
            let (ma, mb) = [a.positive(), a.negative()]
                .into_iter()
                .flat_map(|x| [b.positive(), b.negative()].map(|y| (x, y)))
                .find(|pair| !on_pair.contains(pair))
                .expect("three of four combinations present");
            [SubstitutionStep::assign(a, !ma.is_positive()), SubstitutionStep::assign(b, !mb.is_positive())]
                .into()
        }
        [(la, lb), (la2, lb2)] => {
            if la == la2 {
                // (la ∨ b) ∧ (la ∨ ¬b) forces la.
                [SubstitutionStep::assign(a, la.is_positive())].into()
            } else if lb == lb2 {
                [SubstitutionStep::assign(b, lb.is_positive())].into()
            } else {
                // (la ∨ lb) ∧ (¬la ∨ ¬lb): lb is exactly ¬la.
                let image = if lb.is_positive() { la.negate() } else { *la };
                [SubstitutionStep::by_literal(b, image).expect("distinct variables")].into()
            }
        }
        other => return Err(SimplifyError::PreconditionViolated(a, b, other.len())),
    };
    Ok((apply(s.clone(), &steps), steps))
}

/// Alternates unit elimination with collapsing the smallest pair that has
/// two or more clauses, until the CNF is constant or simple.
pub fn to_simple(s: &Cnf2) -> SimplifyOutcome {
    let mut cur = s.clone();
    let mut trace = Vec::new();
    let result = loop {
        let (next, steps) = eliminate_units(&cur);
        trace.extend(steps);
        cur = next;
        match cur {
            Cnf2::True => break SimplifyResult::TriviallyTrue,
            Cnf2::False => break SimplifyResult::Unsatisfiable,
            Cnf2::Nontrivial(_) => {}
        }
        let Some((&(a, b), _)) = pair_counts(&cur).iter().find(|(_, &n)| n >= 2) else {
            break SimplifyResult::Simple(cur);
        };
        let (next, steps) = collapse_pair(&cur, a, b).expect("pair has at least two clauses");
        trace.extend(steps);
        cur = next;
    };
    SimplifyOutcome { original: s.clone(), result, trace }
}

/// Carries a model of the simplified CNF back to the original.
///
/// Steps are undone last to first. A replacement literal whose variable is
/// still free is fixed to false first; variables that vanished without being
/// substituted are also set false.
pub fn lift_model(outcome: &SimplifyOutcome, model: &Assignment) -> Result<Assignment, SimplifyError> {
    if outcome.result == SimplifyResult::Unsatisfiable {
        return Err(SimplifyError::Unsatisfiable);
    }
    if !check_model(&outcome.simplified(), model) {
        return Err(SimplifyError::ModelInvalid);
    }
    let mut asg = model.clone();
    for step in outcome.trace.iter().rev() {
        let value = match step.replacement() {
            Replacement::True => true,
            Replacement::False => false,
            Replacement::Literal(l) => {
                let base = match asg.get(l.var()) {
                    Some(v) => v,
                    None => {
                        asg.set(l.var(), false);
                        false
                    }
                };
                l.eval(base)
            }
        };
        asg.set(step.target(), value);
    }
    for v in outcome.original.variables() {
        if asg.get(v).is_none() {
            asg.set(v, false);
        }
    }
    Ok(asg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::associated_graph;
    use crate::sat::{is_satisfiable, solve, SolveResult};
    use alloc::vec;

    fn cnf(clauses: &[&[i64]]) -> Cnf2 {
        Cnf2::from_dimacs_clauses(clauses).unwrap()
    }

    fn v(i: u32) -> Var {
        Var::new(i).unwrap()
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_pair_clauses(&cnf(&[&[1, 2], &[-1, -2]]), v(1), v(2)), 2);
        let s1 = cnf(&[&[1, 2], &[-1, 3], &[-2, 3], &[-3, 4], &[-3, 5], &[-4, -5]]);
        assert_eq!(count_pair_clauses(&s1, v(1), v(2)), 1);
        assert_eq!(count_pair_clauses(&s1, v(2), v(1)), 1);
        assert_eq!(count_pair_clauses(&cnf(&[&[1, 3]]), v(1), v(2)), 0);
    }

    #[test]
    fn unit_examples() {
        let (s, trace) = eliminate_units(&cnf(&[&[5], &[-5], &[1, 2]]));
        assert_eq!(s, Cnf2::False);
        assert!(trace.is_empty());
        let (s, trace) = eliminate_units(&cnf(&[&[1], &[-1, 2]]));
        assert_eq!(s, Cnf2::True);
        assert_eq!(trace, [SubstitutionStep::assign(v(1), true), SubstitutionStep::assign(v(2), true)]);
        let (s, trace) = eliminate_units(&cnf(&[&[1, 2]]));
        assert_eq!(s, cnf(&[&[1, 2]]));
        assert!(trace.is_empty());
        // Contradiction found only after propagation.
        let (s, _) = eliminate_units(&cnf(&[&[1], &[-1, 2], &[-1, -2]]));
        assert_eq!(s, Cnf2::False);
    }

    #[test]
    fn collapse_examples() {
        let full = cnf(&[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]]);
        assert_eq!(collapse_pair(&full, v(1), v(2)).unwrap().0, Cnf2::False);

        // R = (a ∨ c) ∧ (¬b ∨ d)
        let three = cnf(&[&[1, 2], &[1, -2], &[-1, 2], &[1, 3], &[-2, 4]]);
        let (s, trace) = collapse_pair(&three, v(1), v(2)).unwrap();
        assert_eq!(s, cnf(&[&[4]]));
        assert_eq!(trace, [SubstitutionStep::assign(v(1), true), SubstitutionStep::assign(v(2), true)]);

        let two = cnf(&[&[1, 2], &[-1, -2], &[2, 3]]);
        let (s, trace) = collapse_pair(&two, v(1), v(2)).unwrap();
        assert_eq!(s, cnf(&[&[-1, 3]]));
        assert_eq!(trace, [SubstitutionStep::by_literal(v(2), v(1).negative()).unwrap()]);

        // (a ∨ ¬b) ∧ (¬a ∨ b): b is a.
        let equiv = cnf(&[&[1, -2], &[-1, 2], &[-2, 3]]);
        let (s, _) = collapse_pair(&equiv, v(1), v(2)).unwrap();
        assert_eq!(s, cnf(&[&[-1, 3]]));

        let shared = cnf(&[&[-1, 2], &[-1, -2], &[1, 3]]);
        let (s, trace) = collapse_pair(&shared, v(2), v(1)).unwrap();
        assert_eq!(s, cnf(&[&[3]]));
        assert_eq!(trace, [SubstitutionStep::assign(v(1), false)]);

        assert_eq!(
            collapse_pair(&cnf(&[&[1, 2]]), v(1), v(2)),
            Err(SimplifyError::PreconditionViolated(v(1), v(2), 1))
        );
    }

    #[test]
    fn to_simple_examples() {
        let out = to_simple(&cnf(&[&[1, 2], &[-1, -2], &[2, 3]]));
        assert_eq!(out.result, SimplifyResult::Simple(cnf(&[&[-1, 3]])));
        assert_eq!(to_simple(&cnf(&[&[1], &[-1]])).result, SimplifyResult::Unsatisfiable);
        let simple = cnf(&[&[1, 2], &[-2, 3], &[-1, -3]]);
        let out = to_simple(&simple);
        assert_eq!(out.result, SimplifyResult::Simple(simple));
        assert!(out.trace.is_empty());
        assert_eq!(to_simple(&Cnf2::True).result, SimplifyResult::TriviallyTrue);
        assert_eq!(to_simple(&Cnf2::False).result, SimplifyResult::Unsatisfiable);
    }

    #[test]
    fn lift_examples() {
        let s = cnf(&[&[1], &[1, 2]]);
        let out = to_simple(&s);
        assert_eq!(out.result, SimplifyResult::TriviallyTrue);
        assert_eq!(out.trace, [SubstitutionStep::assign(v(1), true)]);
        let m = lift_model(&out, &Assignment::new()).unwrap();
        assert_eq!(m.get(v(1)), Some(true));
        assert!(check_model(&s, &m));

        let step = SubstitutionStep::by_literal(v(2), v(1).negative()).unwrap();
        let out = SimplifyOutcome {
            original: cnf(&[&[1, 2], &[-1, -2], &[1, 3]]),
            result: SimplifyResult::Simple(cnf(&[&[1, 3]])),
            trace: vec![step],
        };
        let m = lift_model(&out, &[(v(1), true), (v(3), true)].into_iter().collect()).unwrap();
        assert_eq!((m.get(v(1)), m.get(v(2))), (Some(true), Some(false)));

        let simple = cnf(&[&[1, 2]]);
        let out = to_simple(&simple);
        let model: Assignment = [(v(1), true), (v(2), false)].into_iter().collect();
        assert_eq!(lift_model(&out, &model).unwrap(), model);
        let bad: Assignment = [(v(1), false), (v(2), false)].into_iter().collect();
        assert_eq!(lift_model(&out, &bad), Err(SimplifyError::ModelInvalid));
        assert_eq!(lift_model(&to_simple(&Cnf2::False), &model), Err(SimplifyError::Unsatisfiable));
    }

    #[test]
    fn outcome_matches_solver_on_small_multigraph() {
        let s = cnf(&[&[1, 2], &[1, -2], &[-1, 3], &[-1, -3], &[2, 3], &[3, 4], &[-3, -4]]);
        let out = to_simple(&s);
        assert_eq!(is_satisfiable(&s), out.result != SimplifyResult::Unsatisfiable && is_satisfiable(&out.simplified()));
        if let SimplifyResult::Simple(r) = &out.result {
            assert!(associated_graph(r).is_ok());
        }
        if let SolveResult::Satisfiable(m) = solve(&out.simplified()) {
            assert!(check_model(&s, &lift_model(&out, &m).unwrap()));
        }
    }
}
