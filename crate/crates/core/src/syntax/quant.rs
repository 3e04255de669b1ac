//! Quantified formulas, shared by the first-order and arithmetic sorts.

use std::collections::BTreeSet;
use std::fmt::{self, Debug};

use thiserror::Error;

use super::prop::Connective;
use super::term::{ArithTerm, FoTerm, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantifier {
    All,
    Ex,
}

impl Quantifier {
    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::All => "all",
            Quantifier::Ex => "ex",
        }
    }
}

/// Leaf formulas of a quantified language.
pub trait Atomic: Clone + Eq + Ord + Debug {
    type Term: Term;
    type Letter: Copy + Ord + Debug;

    /// Whether the rendered atom needs parentheses as the operand of `~`.
    const WRAP_UNDER_NEG: bool = false;

    fn letter(&self) -> Self::Letter;

    fn terms(&self) -> Vec<&Self::Term>;

    fn map_terms(&self, f: impl FnMut(&Self::Term) -> Self::Term) -> Self;

    fn has_var(&self, x: u32) -> bool {
        self.terms().into_iter().any(|t| t.has_var(x))
    }
}

/// Identity of a predicate letter `P_index^arity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PredLetter {
    pub index: u32,
    pub arity: u32,
}

impl fmt::Display for PredLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}_{}", self.index, self.arity)
    }
}

/// A simple formula `P_index^n(t1, ..., tn)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PredAtom {
    pub index: u32,
    pub args: Vec<FoTerm>,
}

impl PredAtom {
    pub fn new(index: u32, args: Vec<FoTerm>) -> Self {
        PredAtom { index, args }
    }
}

impl Atomic for PredAtom {
    type Term = FoTerm;
    type Letter = PredLetter;

    fn letter(&self) -> PredLetter {
        PredLetter {
            index: self.index,
            arity: self.args.len() as u32,
        }
    }

    fn terms(&self) -> Vec<&FoTerm> {
        self.args.iter().collect()
    }

    fn map_terms(&self, f: impl FnMut(&FoTerm) -> FoTerm) -> Self {
        PredAtom {
            index: self.index,
            args: self.args.iter().map(f).collect(),
        }
    }
}

/// The two arithmetic predicate letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArithRel {
    Eq,
    Lt,
}

impl ArithRel {
    pub fn symbol(self) -> &'static str {
        match self {
            ArithRel::Eq => "=",
            ArithRel::Lt => "<",
        }
    }
}

impl fmt::Display for ArithRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArithAtom {
    pub rel: ArithRel,
    pub lhs: ArithTerm,
    pub rhs: ArithTerm,
}

impl Atomic for ArithAtom {
    type Term = ArithTerm;
    type Letter = ArithRel;

    const WRAP_UNDER_NEG: bool = true;

    fn letter(&self) -> ArithRel {
        self.rel
    }

    fn terms(&self) -> Vec<&ArithTerm> {
        vec![&self.lhs, &self.rhs]
    }

    fn map_terms(&self, mut f: impl FnMut(&ArithTerm) -> ArithTerm) -> Self {
        ArithAtom {
            rel: self.rel,
            lhs: f(&self.lhs),
            rhs: f(&self.rhs),
        }
    }
}

/// Formula tree over atoms of type `A`, with quantifiers binding variable indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula<A> {
    Atom(A),
    Neg(Box<Formula<A>>),
    Bin(Connective, Box<Formula<A>>, Box<Formula<A>>),
    Quant(Quantifier, u32, Box<Formula<A>>),
}

/// First-order formulas (the sort of predicate calculus).
pub type FoFormula = Formula<PredAtom>;
/// Formulas of the arithmetic system.
pub type ArithFormula = Formula<ArithAtom>;

/// Raised when a term substitution would capture a variable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("x{var} is not free for the substituted term: a free occurrence lies under a binder of x{binder}")]
pub struct CaptureError {
    pub var: u32,
    pub binder: u32,
}

impl<A: Atomic> Formula<A> {
    pub fn atom(a: A) -> Self {
        Formula::Atom(a)
    }

    pub fn neg(a: Self) -> Self {
        Formula::Neg(Box::new(a))
    }

    pub fn bin(c: Connective, a: Self, b: Self) -> Self {
        Formula::Bin(c, Box::new(a), Box::new(b))
    }

    pub fn imp(a: Self, b: Self) -> Self {
        Self::bin(Connective::Impl, a, b)
    }

    pub fn and(a: Self, b: Self) -> Self {
        Self::bin(Connective::Conj, a, b)
    }

    pub fn or(a: Self, b: Self) -> Self {
        Self::bin(Connective::Disj, a, b)
    }

    pub fn equiv(a: Self, b: Self) -> Self {
        Self::bin(Connective::Equiv, a, b)
    }

    pub fn forall(x: u32, body: Self) -> Self {
        Formula::Quant(Quantifier::All, x, Box::new(body))
    }

    pub fn exists(x: u32, body: Self) -> Self {
        Formula::Quant(Quantifier::Ex, x, Box::new(body))
    }

    pub fn as_impl(&self) -> Option<(&Self, &Self)> {
        match self {
            Formula::Bin(Connective::Impl, a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<u32>, out: &mut BTreeSet<u32>) {
        match self {
            Formula::Atom(a) => {
                for t in a.terms() {
                    let mut vs = BTreeSet::new();
                    t.collect_vars(&mut vs);
                    out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
                }
            }
            Formula::Neg(a) => a.collect_free(bound, out),
            Formula::Bin(_, a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Quant(_, x, body) => {
                bound.push(*x);
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable index occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a: &A| a.terms().into_iter().for_each(|t| t.collect_vars(&mut out)));
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Formula::Atom(_) => {}
                Formula::Neg(a) => stack.push(a),
                Formula::Bin(_, a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
                Formula::Quant(_, x, b) => {
                    out.insert(*x);
                    stack.push(b);
                }
            }
        }
        out
    }

    pub fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a A)) {
        match self {
            Formula::Atom(a) => f(a),
            Formula::Neg(a) => a.visit_atoms(f),
            Formula::Bin(_, a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
            Formula::Quant(_, _, b) => b.visit_atoms(f),
        }
    }

    /// The predicate letters occurring in the formula.
    pub fn predicate_letters(&self) -> BTreeSet<A::Letter> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a| {
            out.insert(a.letter());
        });
        out
    }

    /// Whether `x<x>` is free for `t`: no free occurrence of the variable sits
    /// inside the scope of a quantifier binding a variable of `t`.
    pub fn free_for(&self, x: u32, t: &A::Term) -> bool {
        self.capturing_binder(x, &t.vars(), None).is_none()
    }

    /// Returns the innermost capturing binder for the first offending occurrence.
    fn capturing_binder(&self, x: u32, tvars: &BTreeSet<u32>, binder: Option<u32>) -> Option<u32> {
        match self {
            Formula::Atom(a) => match binder {
                Some(b) if a.has_var(x) => Some(b),
                _ => None,
            },
            Formula::Neg(a) => a.capturing_binder(x, tvars, binder),
            Formula::Bin(_, a, b) => a
                .capturing_binder(x, tvars, binder)
                .or_else(|| b.capturing_binder(x, tvars, binder)),
            Formula::Quant(_, y, body) => {
                if *y == x {
                    return None;
                }
                let binder = if tvars.contains(y) { Some(*y) } else { binder };
                body.capturing_binder(x, tvars, binder)
            }
        }
    }

    /// `φ(x/t)`: replaces the free occurrences of `x<x>` by `t`.
    /// Refuses rather than renaming when `t` would be captured.
    pub fn substitute(&self, x: u32, t: &A::Term) -> Result<Self, CaptureError> {
        if let Some(binder) = self.capturing_binder(x, &t.vars(), None) {
            return Err(CaptureError { var: x, binder });
        }
        Ok(self.replace_free(x, t))
    }

    fn replace_free(&self, x: u32, t: &A::Term) -> Self {
        match self {
            Formula::Atom(a) => Formula::Atom(a.map_terms(|s| s.replace_var(x, t))),
            Formula::Neg(a) => Self::neg(a.replace_free(x, t)),
            Formula::Bin(c, a, b) => Self::bin(*c, a.replace_free(x, t), b.replace_free(x, t)),
            Formula::Quant(q, y, body) if *y == x => Formula::Quant(*q, *y, body.clone()),
            Formula::Quant(q, y, body) => Formula::Quant(*q, *y, Box::new(body.replace_free(x, t))),
        }
    }

    /// Prefixes one quantifier per free variable, lowest index outermost.
    fn close_with(self, q: Quantifier) -> Self {
        let fv = self.free_vars();
        fv.into_iter()
            .rev()
            .fold(self, |acc, x| Formula::Quant(q, x, Box::new(acc)))
    }

    /// `∧φ`: the universal closure, ascending variable order outermost first.
    pub fn universal_closure(&self) -> Self {
        self.clone().close_with(Quantifier::All)
    }

    /// `α*`: existential closure of the negation; plain negation for closed formulas.
    pub fn star(&self) -> Self {
        Self::neg(self.clone()).close_with(Quantifier::Ex)
    }

    /// Strips leading universal quantifiers.
    pub fn strip_universal_prefix(&self) -> (Vec<u32>, &Self) {
        let mut vars = Vec::new();
        let mut cur = self;
        while let Formula::Quant(Quantifier::All, x, body) = cur {
            vars.push(*x);
            cur = body;
        }
        (vars, cur)
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Neg(a) | Formula::Quant(_, _, a) => 1 + a.size(),
            Formula::Bin(_, a, b) => 1 + a.size() + b.size(),
        }
    }
}
