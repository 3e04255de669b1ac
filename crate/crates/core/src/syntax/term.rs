//! Term languages of the first-order and arithmetic sorts.

use std::collections::BTreeSet;
use std::fmt::Debug;

/// Operations shared by both term languages.
pub trait Term: Clone + Eq + Ord + Debug {
    /// The individual variable `x<index>`.
    fn var(index: u32) -> Self;

    fn collect_vars(&self, out: &mut BTreeSet<u32>);

    fn has_var(&self, x: u32) -> bool;

    /// Replaces every occurrence of `x<x>` by `t`.
    fn replace_var(&self, x: u32, t: &Self) -> Self;

    /// Pushes `self` and every subterm, outermost first.
    fn collect_subterms(&self, out: &mut Vec<Self>);

    fn vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }
}

/// Terms over individual variables, constants and indexed function letters.
/// The arity of a function letter is the length of its argument list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FoTerm {
    Var(u32),
    Const(u32),
    Fun { index: u32, args: Vec<FoTerm> },
}

impl FoTerm {
    pub fn fun(index: u32, args: Vec<FoTerm>) -> Self {
        FoTerm::Fun { index, args }
    }

    pub fn depth(&self) -> usize {
        match self {
            FoTerm::Var(_) | FoTerm::Const(_) => 0,
            FoTerm::Fun { args, .. } => 1 + args.iter().map(FoTerm::depth).max().unwrap_or(0),
        }
    }

    pub(crate) fn visit<'a>(&'a self, f: &mut impl FnMut(&'a FoTerm)) {
        f(self);
        if let FoTerm::Fun { args, .. } = self {
            for a in args {
                a.visit(f);
            }
        }
    }
}

impl Term for FoTerm {
    fn var(index: u32) -> Self {
        FoTerm::Var(index)
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            FoTerm::Var(k) => {
                out.insert(*k);
            }
            FoTerm::Const(_) => {}
            FoTerm::Fun { args, .. } => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    fn has_var(&self, x: u32) -> bool {
        match self {
            FoTerm::Var(k) => *k == x,
            FoTerm::Const(_) => false,
            FoTerm::Fun { args, .. } => args.iter().any(|a| a.has_var(x)),
        }
    }

    fn replace_var(&self, x: u32, t: &Self) -> Self {
        match self {
            FoTerm::Var(k) if *k == x => t.clone(),
            FoTerm::Var(_) | FoTerm::Const(_) => self.clone(),
            FoTerm::Fun { index, args } => FoTerm::Fun {
                index: *index,
                args: args.iter().map(|a| a.replace_var(x, t)).collect(),
            },
        }
    }

    fn collect_subterms(&self, out: &mut Vec<Self>) {
        self.visit(&mut |t| out.push(t.clone()));
    }
}

/// Terms of the arithmetic language: variables, the constant `1`,
/// successor, addition and multiplication.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArithTerm {
    Var(u32),
    One,
    Succ(Box<ArithTerm>),
    Add(Box<ArithTerm>, Box<ArithTerm>),
    Mul(Box<ArithTerm>, Box<ArithTerm>),
}

impl ArithTerm {
    pub fn succ(t: ArithTerm) -> Self {
        ArithTerm::Succ(Box::new(t))
    }

    pub fn add(a: ArithTerm, b: ArithTerm) -> Self {
        ArithTerm::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: ArithTerm, b: ArithTerm) -> Self {
        ArithTerm::Mul(Box::new(a), Box::new(b))
    }

    pub fn depth(&self) -> usize {
        match self {
            ArithTerm::Var(_) | ArithTerm::One => 0,
            ArithTerm::Succ(a) => 1 + a.depth(),
            ArithTerm::Add(a, b) | ArithTerm::Mul(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl Term for ArithTerm {
    fn var(index: u32) -> Self {
        ArithTerm::Var(index)
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            ArithTerm::Var(k) => {
                out.insert(*k);
            }
            ArithTerm::One => {}
            ArithTerm::Succ(a) => a.collect_vars(out),
            ArithTerm::Add(a, b) | ArithTerm::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn has_var(&self, x: u32) -> bool {
        match self {
            ArithTerm::Var(k) => *k == x,
            ArithTerm::One => false,
            ArithTerm::Succ(a) => a.has_var(x),
            ArithTerm::Add(a, b) | ArithTerm::Mul(a, b) => a.has_var(x) || b.has_var(x),
        }
    }

    fn replace_var(&self, x: u32, t: &Self) -> Self {
        match self {
            ArithTerm::Var(k) if *k == x => t.clone(),
            ArithTerm::Var(_) | ArithTerm::One => self.clone(),
            ArithTerm::Succ(a) => ArithTerm::succ(a.replace_var(x, t)),
            ArithTerm::Add(a, b) => ArithTerm::add(a.replace_var(x, t), b.replace_var(x, t)),
            ArithTerm::Mul(a, b) => ArithTerm::mul(a.replace_var(x, t), b.replace_var(x, t)),
        }
    }

    fn collect_subterms(&self, out: &mut Vec<Self>) {
        out.push(self.clone());
        match self {
            ArithTerm::Var(_) | ArithTerm::One => {}
            ArithTerm::Succ(a) => a.collect_subterms(out),
            ArithTerm::Add(a, b) | ArithTerm::Mul(a, b) => {
                a.collect_subterms(out);
                b.collect_subterms(out);
            }
        }
    }
}
