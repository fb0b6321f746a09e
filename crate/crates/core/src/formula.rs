//! Variables, literals, clauses and reduced CNFs with clauses of length at
//! most two.
//!
//! A [`Cnf2`] is always stored in reduced form: constants never appear inside
//! a stored [`Clause`], no clause repeats a literal or contains a
//! complementary pair, and the clause container is a set (so `x ∧ x = x`
//! holds structurally). Raw input, possibly containing constants and repeated
//! literals, goes through [`reduce`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;
use core::num::NonZeroU32;
use core::ops::{Deref, Not};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("clause has {0} distinct literals after reduction; at most 2 are supported")]
    ClauseTooLong(usize),
    #[error("variable index must be positive")]
    ZeroVariable,
    #[error("variable {0} is already bound")]
    AlreadyBound(Var),
    #[error("variable {0} cannot be replaced by a literal over itself")]
    SelfReplacement(Var),
}

/// A Boolean variable, 1-based so indices line up with DIMACS.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(NonZeroU32);

impl Var {
    pub fn new(index: u32) -> Option<Var> {
        NonZeroU32::new(index).map(Var)
    }

    pub const fn index(self) -> u32 {
        self.0.get()
    }

    pub fn positive(self) -> Lit {
        Lit::new(self, Sign::Positive)
    }

    pub fn negative(self) -> Lit {
        Lit::new(self, Sign::Negative)
    }

    pub fn lit(self, sign: Sign) -> Lit {
        Lit::new(self, sign)
    }

    /// The successor index; used when allocating fresh variables.
    pub fn next(self) -> Var {
        Var(self.0.checked_add(1).expect("variable index overflow"))
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.index())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.index())
    }
}

/// Polarity of a literal. `Positive < Negative` fixes the canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Not for Sign {
    type Output = Sign;

    fn not(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    var: Var,
    sign: Sign,
}

impl Lit {
    pub const fn new(var: Var, sign: Sign) -> Lit {
        Lit { var, sign }
    }

    /// Builds a literal from a signed DIMACS integer.
    pub fn from_dimacs(value: i64) -> Option<Lit> {
        let index = u32::try_from(value.unsigned_abs()).ok()?;
        let var = Var::new(index)?;
        Some(if value < 0 { var.negative() } else { var.positive() })
    }

    pub fn to_dimacs(self) -> i64 {
        let index = i64::from(self.var.index());
        match self.sign {
            Sign::Positive => index,
            Sign::Negative => -index,
        }
    }

    pub const fn var(self) -> Var {
        self.var
    }

    pub const fn sign(self) -> Sign {
        self.sign
    }

    pub fn is_positive(self) -> bool {
        self.sign == Sign::Positive
    }

    pub fn negate(self) -> Lit {
        Lit { var: self.var, sign: !self.sign }
    }

    /// Truth value of the literal when its variable takes `value`.
    pub fn eval(self, value: bool) -> bool {
        match self.sign {
            Sign::Positive => value,
            Sign::Negative => !value,
        }
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        self.negate()
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Positive => write!(f, "{}", self.var),
            Sign::Negative => write!(f, "¬{}", self.var),
        }
    }
}

/// A literal or one of the constants, as found in unreduced input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RawLit {
    Const(bool),
    Lit(Lit),
}

impl From<Lit> for RawLit {
    fn from(lit: Lit) -> Self {
        RawLit::Lit(lit)
    }
}

/// A reduced clause of length one or two, in canonical literal order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Clause {
    Unit(Lit),
    /// Invariant: `first.var() < second.var()`.
    Pair(Lit, Lit),
}

impl Clause {
    pub fn unit(lit: Lit) -> Clause {
        Clause::Unit(lit)
    }

    /// A two-literal clause over distinct variables; `None` when both
    /// literals share a variable (such input reduces to a unit or to ⊤).
    pub fn pair(a: Lit, b: Lit) -> Option<Clause> {
        match a.var.cmp(&b.var) {
            core::cmp::Ordering::Less => Some(Clause::Pair(a, b)),
            core::cmp::Ordering::Greater => Some(Clause::Pair(b, a)),
            core::cmp::Ordering::Equal => None,
        }
    }

    pub fn literals(&self) -> impl Iterator<Item = Lit> + '_ {
        let (first, second) = match *self {
            Clause::Unit(a) => (a, None),
            Clause::Pair(a, b) => (a, Some(b)),
        };
        core::iter::once(first).chain(second)
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        match self {
            Clause::Unit(_) => 1,
            Clause::Pair(..) => 2,
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Clause::Unit(_))
    }

    /// The set of variables occurring in the clause.
    pub fn support(&self) -> BTreeSet<Var> {
        self.literals().map(Lit::var).collect()
    }

    /// The literal of this clause over `var`, if any.
    pub fn literal_on(&self, var: Var) -> Option<Lit> {
        self.literals().find(|l| l.var == var)
    }

    /// For a pair clause containing `var`, the literal over the other variable.
    pub fn partner_of(&self, var: Var) -> Option<Lit> {
        match *self {
            Clause::Pair(a, b) if a.var == var => Some(b),
            Clause::Pair(a, b) if b.var == var => Some(a),
            _ => None,
        }
    }

    pub fn variables(&self) -> Option<(Var, Var)> {
        match *self {
            Clause::Pair(a, b) => Some((a.var, b.var)),
            Clause::Unit(_) => None,
        }
    }

    pub fn eval(&self, asg: &Assignment) -> Option<bool> {
        let mut unknown = false;
        for lit in self.literals() {
            match asg.value_of(lit) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => unknown = true,
            }
        }
        if unknown {
            None
        } else {
            Some(false)
        }
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clause::Unit(a) => write!(f, "({a})"),
            Clause::Pair(a, b) => write!(f, "({a} ∨ {b})"),
        }
    }
}

/// Non-empty set of reduced clauses.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClauseSet(BTreeSet<Clause>);

impl Deref for ClauseSet {
    type Target = BTreeSet<Clause>;

    fn deref(&self) -> &BTreeSet<Clause> {
        &self.0
    }
}

impl fmt::Debug for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// A reduced CNF whose clauses have length at most two.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cnf2 {
    True,
    False,
    Nontrivial(ClauseSet),
}

impl Cnf2 {
    /// Conjunction of already-reduced clauses. An empty iterator is ⊤.
    pub fn from_clauses<I: IntoIterator<Item = Clause>>(clauses: I) -> Cnf2 {
        let set: BTreeSet<Clause> = clauses.into_iter().collect();
        if set.is_empty() {
            Cnf2::True
        } else {
            Cnf2::Nontrivial(ClauseSet(set))
        }
    }

    /// Convenience constructor from signed DIMACS integers, one slice per
    /// clause, reduced on the way in.
    pub fn from_dimacs_clauses<C: AsRef<[i64]>>(clauses: &[C]) -> Result<Cnf2, FormulaError> {
        let mut raw = Vec::with_capacity(clauses.len());
        for clause in clauses {
            let mut lits = Vec::with_capacity(clause.as_ref().len());
            for &v in clause.as_ref() {
                lits.push(RawLit::Lit(Lit::from_dimacs(v).ok_or(FormulaError::ZeroVariable)?));
            }
            raw.push(lits);
        }
        reduce(&raw)
    }

    pub fn is_true(&self) -> bool {
        matches!(self, Cnf2::True)
    }

    pub fn is_false(&self) -> bool {
        matches!(self, Cnf2::False)
    }

    pub fn is_nontrivial(&self) -> bool {
        matches!(self, Cnf2::Nontrivial(_))
    }

    pub fn clauses(&self) -> impl Iterator<Item = &Clause> + '_ {
        let set = match self {
            Cnf2::Nontrivial(set) => Some(set.0.iter()),
            _ => None,
        };
        set.into_iter().flatten()
    }

    pub fn clause_set(&self) -> Option<&ClauseSet> {
        match self {
            Cnf2::Nontrivial(set) => Some(set),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.clause_set().map_or(0, |s| s.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.clause_set().is_some_and(|s| s.contains(clause))
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.clauses().flat_map(|c| c.literals().map(Lit::var)).collect()
    }

    pub fn max_var(&self) -> Option<Var> {
        self.clauses().flat_map(|c| c.literals().map(Lit::var)).max()
    }

    pub fn has_units(&self) -> bool {
        self.clauses().any(Clause::is_unit)
    }

    /// Rewrites every literal through `map` and reduces the result.
    pub fn rewrite<F: FnMut(Lit) -> RawLit>(&self, mut map: F) -> Cnf2 {
        let set = match self {
            Cnf2::True => return Cnf2::True,
            Cnf2::False => return Cnf2::False,
            Cnf2::Nontrivial(set) => set,
        };
        let mut out = BTreeSet::new();
        for clause in set.iter() {
            let mut buf = [RawLit::Const(false); 2];
            let mut n = 0;
            for lit in clause.literals() {
                buf[n] = map(lit);
                n += 1;
            }
            match reduce_clause(&buf[..n]) {
                // Rewriting never lengthens a clause.
                Ok(ReducedClause::Top) | Err(_) => {}
                Ok(ReducedClause::Bottom) => return Cnf2::False,
                Ok(ReducedClause::Clause(c)) => {
                    out.insert(c);
                }
            }
        }
        Cnf2::from_clauses(out)
    }

    /// Exchanges `var` with `¬var` everywhere; an equisatisfiable renaming.
    pub fn flip(&self, var: Var) -> Cnf2 {
        self.rewrite(|l| RawLit::Lit(if l.var() == var { l.negate() } else { l }))
    }

    /// Conjunction of two reduced CNFs.
    pub fn and(&self, other: &Cnf2) -> Cnf2 {
        match (self, other) {
            (Cnf2::False, _) | (_, Cnf2::False) => Cnf2::False,
            (Cnf2::True, x) | (x, Cnf2::True) => x.clone(),
            (Cnf2::Nontrivial(a), Cnf2::Nontrivial(b)) => {
                Cnf2::from_clauses(a.iter().chain(b.iter()).copied())
            }
        }
    }
}

impl fmt::Debug for Cnf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cnf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cnf2::True => f.write_str("⊤"),
            Cnf2::False => f.write_str("⊥"),
            Cnf2::Nontrivial(set) => {
                for (i, c) in set.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ∧ ")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    }
}

enum ReducedClause {
    Top,
    Bottom,
    Clause(Clause),
}

fn reduce_clause(raw: &[RawLit]) -> Result<ReducedClause, FormulaError> {
    let mut lits: Vec<Lit> = Vec::with_capacity(raw.len());
    for item in raw {
        match *item {
            RawLit::Const(true) => return Ok(ReducedClause::Top),
            RawLit::Const(false) => {}
            RawLit::Lit(l) => {
                if lits.contains(&l.negate()) {
                    return Ok(ReducedClause::Top);
                }
                if !lits.contains(&l) {
                    lits.push(l);
                }
            }
        }
    }
    match lits.as_slice() {
        [] => Ok(ReducedClause::Bottom),
        [a] => Ok(ReducedClause::Clause(Clause::Unit(*a))),
        [a, b] => Ok(ReducedClause::Clause(Clause::pair(*a, *b).expect("distinct variables"))),
        more => Err(FormulaError::ClauseTooLong(more.len())),
    }
}

/// Applies the tautological reductions to a multiset of raw clauses.
///
/// Clauses are disjunctions of [`RawLit`]s. The result is `False` iff some
/// clause reduces to the empty clause and `True` iff every clause reduces to
/// ⊤. Clauses that still hold three or more distinct literals are rejected.
pub fn reduce<C: AsRef<[RawLit]>>(raw: &[C]) -> Result<Cnf2, FormulaError> {
    let mut out = BTreeSet::new();
    let mut is_false = false;
    for clause in raw {
        match reduce_clause(clause.as_ref())? {
            ReducedClause::Top => {}
            ReducedClause::Bottom => is_false = true,
            ReducedClause::Clause(c) => {
                out.insert(c);
            }
        }
    }
    Ok(if is_false { Cnf2::False } else { Cnf2::from_clauses(out) })
}

/// True iff `raw` is already unchanged by the tautological reductions: no
/// constants, no repeated or complementary literal inside a clause, and no
/// repeated clause.
pub fn is_reduced<C: AsRef<[RawLit]>>(raw: &[C]) -> bool {
    let mut seen = BTreeSet::new();
    for clause in raw {
        let clause = clause.as_ref();
        let mut lits = Vec::with_capacity(clause.len());
        for item in clause {
            match item {
                RawLit::Const(_) => return false,
                RawLit::Lit(l) => {
                    if lits.iter().any(|m: &Lit| m.var() == l.var()) {
                        return false;
                    }
                    lits.push(*l);
                }
            }
        }
        lits.sort();
        if lits.is_empty() || !seen.insert(lits) {
            return false;
        }
    }
    true
}

/// A partial truth assignment.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Assignment(BTreeMap<Var, bool>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, var: Var, value: bool) -> Result<(), FormulaError> {
        if self.0.contains_key(&var) {
            return Err(FormulaError::AlreadyBound(var));
        }
        self.0.insert(var, value);
        Ok(())
    }

    pub(crate) fn set(&mut self, var: Var, value: bool) {
        self.0.insert(var, value);
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.0.get(&var).copied()
    }

    pub fn value_of(&self, lit: Lit) -> Option<bool> {
        self.get(lit.var()).map(|v| lit.eval(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.0.iter().map(|(v, b)| (*v, *b))
    }

    /// The assignment as DIMACS literals, ascending by variable.
    pub fn to_literals(&self) -> Vec<Lit> {
        self.iter().map(|(v, b)| if b { v.positive() } else { v.negative() }).collect()
    }
}

impl FromIterator<(Var, bool)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Var, bool)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Replacement {
    True,
    False,
    Literal(Lit),
}

/// `target := replacement`, applied to every occurrence of `target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubstitutionStep {
    target: Var,
    replacement: Replacement,
}

impl SubstitutionStep {
    pub fn assign(target: Var, value: bool) -> Self {
        let replacement = if value { Replacement::True } else { Replacement::False };
        SubstitutionStep { target, replacement }
    }

    pub fn by_literal(target: Var, lit: Lit) -> Result<Self, FormulaError> {
        if lit.var() == target {
            return Err(FormulaError::SelfReplacement(target));
        }
        Ok(SubstitutionStep { target, replacement: Replacement::Literal(lit) })
    }

    pub fn target(&self) -> Var {
        self.target
    }

    pub fn replacement(&self) -> Replacement {
        self.replacement
    }

    fn image(&self, lit: Lit) -> RawLit {
        if lit.var() != self.target {
            return RawLit::Lit(lit);
        }
        let positive = match self.replacement {
            Replacement::True => RawLit::Const(true),
            Replacement::False => RawLit::Const(false),
            Replacement::Literal(l) => RawLit::Lit(l),
        };
        match (lit.sign(), positive) {
            (Sign::Positive, r) => r,
            (Sign::Negative, RawLit::Const(b)) => RawLit::Const(!b),
            (Sign::Negative, RawLit::Lit(l)) => RawLit::Lit(l.negate()),
        }
    }
}

impl fmt::Display for SubstitutionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.replacement {
            Replacement::True => write!(f, "{}:=⊤", self.target),
            Replacement::False => write!(f, "{}:=⊥", self.target),
            Replacement::Literal(l) => write!(f, "{}:={}", self.target, l),
        }
    }
}

pub fn substitute(s: &Cnf2, step: SubstitutionStep) -> Cnf2 {
    s.rewrite(|l| step.image(l))
}

/// Sets every bound variable to its value and reduces; unbound variables
/// stay symbolic.
pub fn apply_assignment(s: &Cnf2, asg: &Assignment) -> Cnf2 {
    s.rewrite(|l| match asg.value_of(l) {
        Some(b) => RawLit::Const(b),
        None => RawLit::Lit(l),
    })
}

pub fn clause_support(c: &Clause) -> BTreeSet<Var> {
    c.support()
}
