//! Text rendering with minimal parentheses. Output is accepted by the parsers
//! in [`super::parse`] and parses back to the same tree.

use std::fmt::{self, Display, Formatter, Write};

use super::prop::{Connective, PropFormula};
use super::quant::{ArithAtom, Atomic, Formula, PredAtom};
use super::term::{ArithTerm, FoTerm};

const PREC_UNARY: u8 = 5;

/// Minimum precedence the left and right operands of `c` must have to print bare.
fn operand_floor(c: Connective) -> (u8, u8) {
    let p = c.precedence();
    if c.right_assoc() {
        (p + 1, p)
    } else {
        (p, p + 1)
    }
}

fn paren(
    f: &mut Formatter<'_>,
    wrap: bool,
    inner: impl FnOnce(&mut Formatter<'_>) -> fmt::Result,
) -> fmt::Result {
    if wrap {
        f.write_char('(')?;
        inner(f)?;
        f.write_char(')')
    } else {
        inner(f)
    }
}

impl PropFormula {
    fn precedence(&self) -> u8 {
        match self {
            PropFormula::Bin(c, _, _) => c.precedence(),
            _ => PREC_UNARY,
        }
    }

    fn fmt_at(&self, f: &mut Formatter<'_>, floor: u8) -> fmt::Result {
        paren(f, self.precedence() < floor, |f| match self {
            PropFormula::Atom(v) => write!(f, "{v}"),
            PropFormula::Neg(a) => {
                f.write_char('~')?;
                a.fmt_at(f, PREC_UNARY)
            }
            PropFormula::Bin(c, a, b) => {
                let (lf, rf) = operand_floor(*c);
                a.fmt_at(f, lf)?;
                write!(f, " {} ", c.symbol())?;
                b.fmt_at(f, rf)
            }
        })
    }
}

impl Display for PropFormula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl<A: Atomic + Display> Formula<A> {
    fn precedence(&self) -> u8 {
        match self {
            Formula::Bin(c, _, _) => c.precedence(),
            _ => PREC_UNARY,
        }
    }

    fn fmt_at(&self, f: &mut Formatter<'_>, floor: u8) -> fmt::Result {
        paren(f, self.precedence() < floor, |f| match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Neg(a) => {
                f.write_char('~')?;
                match a.as_ref() {
                    Formula::Atom(atom) if A::WRAP_UNDER_NEG => write!(f, "({atom})"),
                    _ => a.fmt_at(f, PREC_UNARY),
                }
            }
            Formula::Bin(c, a, b) => {
                let (lf, rf) = operand_floor(*c);
                a.fmt_at(f, lf)?;
                write!(f, " {} ", c.symbol())?;
                b.fmt_at(f, rf)
            }
            Formula::Quant(q, x, body) => {
                write!(f, "({} x{} ", q.keyword(), x)?;
                // binary bodies are bracketed, as in the printed axioms
                if let Formula::Bin(..) = **body {
                    f.write_char('(')?;
                    body.fmt_at(f, 0)?;
                    f.write_char(')')?;
                } else {
                    body.fmt_at(f, 0)?;
                }
                f.write_char(')')
            }
        })
    }
}

impl<A: Atomic + Display> Display for Formula<A> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

fn fmt_args(f: &mut Formatter<'_>, args: &[FoTerm]) -> fmt::Result {
    f.write_char('(')?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    f.write_char(')')
}

impl Display for FoTerm {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            FoTerm::Var(k) => write!(f, "x{k}"),
            FoTerm::Const(k) => write!(f, "a{k}"),
            FoTerm::Fun { index, args } => {
                write!(f, "f{}_{}", index, args.len())?;
                fmt_args(f, args)
            }
        }
    }
}

impl Display for PredAtom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "P{}_{}", self.index, self.args.len())?;
        fmt_args(f, &self.args)
    }
}

impl ArithTerm {
    // 1: sums, 2: products, 3: primaries
    fn precedence(&self) -> u8 {
        match self {
            ArithTerm::Add(..) => 1,
            ArithTerm::Mul(..) => 2,
            _ => 3,
        }
    }

    fn fmt_at(&self, f: &mut Formatter<'_>, floor: u8) -> fmt::Result {
        paren(f, self.precedence() < floor, |f| match self {
            ArithTerm::Var(k) => write!(f, "x{k}"),
            ArithTerm::One => f.write_char('1'),
            ArithTerm::Succ(a) => {
                f.write_str("S(")?;
                a.fmt_at(f, 0)?;
                f.write_char(')')
            }
            ArithTerm::Add(a, b) => {
                a.fmt_at(f, 1)?;
                f.write_str(" + ")?;
                b.fmt_at(f, 2)
            }
            ArithTerm::Mul(a, b) => {
                a.fmt_at(f, 2)?;
                f.write_str(" * ")?;
                b.fmt_at(f, 3)
            }
        })
    }
}

impl Display for ArithTerm {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl Display for ArithAtom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.rel, self.rhs)
    }
}
