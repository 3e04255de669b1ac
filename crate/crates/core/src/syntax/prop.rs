//! Propositional formulas over the letters `p`, `q`, `s`, `t`.

use std::collections::BTreeSet;
use std::fmt;

/// Base letter of a propositional variable. Declaration order is the
/// variable order used everywhere (valuation enumeration, witnesses).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    P,
    Q,
    S,
    T,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::P, Letter::Q, Letter::S, Letter::T];

    pub fn as_char(self) -> char {
        match self {
            Letter::P => 'p',
            Letter::Q => 'q',
            Letter::S => 's',
            Letter::T => 't',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'p' => Some(Letter::P),
            'q' => Some(Letter::Q),
            's' => Some(Letter::S),
            't' => Some(Letter::T),
            _ => None,
        }
    }
}

/// A propositional variable such as `p`, `q1` or `t17`.
///
/// Ordering is by letter, then index, with a missing index sorting before `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropVar {
    pub letter: Letter,
    pub index: Option<u32>,
}

impl PropVar {
    pub const fn new(letter: Letter, index: Option<u32>) -> Self {
        PropVar { letter, index }
    }

    /// The bare letter, e.g. `p`.
    pub const fn bare(letter: Letter) -> Self {
        PropVar {
            letter,
            index: None,
        }
    }

    /// `p<k>`.
    pub const fn p(k: u32) -> Self {
        PropVar {
            letter: Letter::P,
            index: Some(k),
        }
    }
}

impl fmt::Display for PropVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{}{}", self.letter.as_char(), i),
            None => write!(f, "{}", self.letter.as_char()),
        }
    }
}

/// Binary connectives. Negation is a separate node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Connective {
    Impl,
    Disj,
    Conj,
    Equiv,
}

impl Connective {
    pub const ALL: [Connective; 4] = [
        Connective::Impl,
        Connective::Equiv,
        Connective::Disj,
        Connective::Conj,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Impl => "->",
            Connective::Disj => "|",
            Connective::Conj => "&",
            Connective::Equiv => "<->",
        }
    }

    /// Binding strength, tightest highest. Negation and atoms sit above all of these.
    pub(crate) fn precedence(self) -> u8 {
        match self {
            Connective::Equiv => 1,
            Connective::Impl => 2,
            Connective::Disj => 3,
            Connective::Conj => 4,
        }
    }

    pub(crate) fn right_assoc(self) -> bool {
        matches!(self, Connective::Impl)
    }
}

/// A formula of the propositional language.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropFormula {
    Atom(PropVar),
    Neg(Box<PropFormula>),
    Bin(Connective, Box<PropFormula>, Box<PropFormula>),
}

impl PropFormula {
    pub fn atom(v: PropVar) -> Self {
        PropFormula::Atom(v)
    }

    pub fn neg(a: PropFormula) -> Self {
        PropFormula::Neg(Box::new(a))
    }

    pub fn bin(c: Connective, a: PropFormula, b: PropFormula) -> Self {
        PropFormula::Bin(c, Box::new(a), Box::new(b))
    }

    pub fn imp(a: PropFormula, b: PropFormula) -> Self {
        Self::bin(Connective::Impl, a, b)
    }

    pub fn or(a: PropFormula, b: PropFormula) -> Self {
        Self::bin(Connective::Disj, a, b)
    }

    pub fn and(a: PropFormula, b: PropFormula) -> Self {
        Self::bin(Connective::Conj, a, b)
    }

    pub fn equiv(a: PropFormula, b: PropFormula) -> Self {
        Self::bin(Connective::Equiv, a, b)
    }

    /// The set of propositional variables occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<PropVar> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<PropVar>) {
        match self {
            PropFormula::Atom(v) => {
                out.insert(*v);
            }
            PropFormula::Neg(a) => a.collect_atoms(out),
            PropFormula::Bin(_, a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Binary connectives occurring in the formula.
    pub fn connectives(&self) -> BTreeSet<Connective> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f {
                PropFormula::Atom(_) => {}
                PropFormula::Neg(a) => stack.push(a),
                PropFormula::Bin(c, a, b) => {
                    out.insert(*c);
                    stack.push(a);
                    stack.push(b);
                }
            }
        }
        out
    }

    pub fn has_negation(&self) -> bool {
        match self {
            PropFormula::Atom(_) => false,
            PropFormula::Neg(_) => true,
            PropFormula::Bin(_, a, b) => a.has_negation() || b.has_negation(),
        }
    }

    /// Number of connective occurrences (negations included).
    pub fn size(&self) -> usize {
        match self {
            PropFormula::Atom(_) => 0,
            PropFormula::Neg(a) => 1 + a.size(),
            PropFormula::Bin(_, a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            PropFormula::Atom(_) => 0,
            PropFormula::Neg(a) => 1 + a.depth(),
            PropFormula::Bin(_, a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// All subformulas, the formula itself included, in pre-order.
    pub fn subformulas(&self) -> Vec<&PropFormula> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            out.push(f);
            match f {
                PropFormula::Atom(_) => {}
                PropFormula::Neg(a) => stack.push(a),
                PropFormula::Bin(_, a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
        out
    }

    /// `α*`, which for propositional formulas is plain negation.
    pub fn star(&self) -> Self {
        Self::neg(self.clone())
    }

    /// Splits `a -> b` into its halves.
    pub fn as_impl(&self) -> Option<(&PropFormula, &PropFormula)> {
        match self {
            PropFormula::Bin(Connective::Impl, a, b) => Some((a, b)),
            _ => None,
        }
    }
}

impl From<PropVar> for PropFormula {
    fn from(v: PropVar) -> Self {
        PropFormula::Atom(v)
    }
}
