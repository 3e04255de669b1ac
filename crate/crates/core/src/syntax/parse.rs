//! Recursive-descent parsers for the three formula sorts.
//!
//! Connective precedence, tightest first: `~`, `&`, `|`, `->` (right
//! associative), `<->` (left associative). In arithmetic terms `*` binds
//! tighter than `+`; both associate to the left.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::prop::{Connective, Letter, PropFormula, PropVar};
use super::quant::{ArithAtom, ArithFormula, ArithRel, FoFormula, Formula, PredAtom, Quantifier};
use super::term::{ArithTerm, FoTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {}, found {found}", ExpectedList(.expected))]
    Syntax {
        offset: usize,
        expected: BTreeSet<String>,
        found: String,
    },
    #[error("unexpected character {ch:?} at byte {offset}")]
    Lex { offset: usize, ch: char },
    #[error(
        "{symbol} at byte {offset} declares arity {declared} but is applied to {used} argument(s)"
    )]
    Arity {
        offset: usize,
        symbol: String,
        declared: u32,
        used: u32,
    },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::Lex { offset, .. }
            | ParseError::Arity { offset, .. } => *offset,
        }
    }
}

struct ExpectedList<'a>(&'a BTreeSet<String>);

impl fmt::Display for ExpectedList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<&str> = self.0.iter().map(String::as_str).collect();
        match items.len() {
            0 => f.write_str("nothing"),
            1 => f.write_str(items[0]),
            _ => write!(f, "one of {}", items.join(", ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Tilde,
    Amp,
    Bar,
    Arrow,
    DArrow,
    LParen,
    RParen,
    Comma,
    Eq,
    Lt,
    Plus,
    Star,
    Word(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Tilde => "~",
            Tok::Amp => "&",
            Tok::Bar => "|",
            Tok::Arrow => "->",
            Tok::DArrow => "<->",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Comma => ",",
            Tok::Eq => "=",
            Tok::Lt => "<",
            Tok::Plus => "+",
            Tok::Star => "*",
            Tok::Word(w) => return write!(f, "'{w}'"),
        };
        write!(f, "'{s}'")
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Tok::Tilde,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'=' => Tok::Eq,
            b'+' => Tok::Plus,
            b'*' => Tok::Star,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::DArrow
            }
            b'<' => Tok::Lt,
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Word(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Lex { offset: i, ch });
            }
        };
        i += 1;
        out.push((tok, start));
    }
    Ok(out)
}

/// Canonical decimal index: digits only, no leading zeros.
fn index(digits: &str) -> Option<u32> {
    if digits.is_empty() || (digits.len() > 1 && digits.starts_with('0')) {
        return None;
    }
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Splits `<prefix><i>_<n>` into `(i, n)`.
fn indexed_letter(word: &str, prefix: char) -> Option<(u32, u32)> {
    let rest = word.strip_prefix(prefix)?;
    let (i, n) = rest.split_once('_')?;
    Some((index(i)?, index(n)?))
}

fn variable(word: &str) -> Option<u32> {
    index(word.strip_prefix('x')?)
}

fn prop_var(word: &str) -> Option<PropVar> {
    let mut chars = word.chars();
    let letter = Letter::from_char(chars.next()?)?;
    let rest = chars.as_str();
    if rest.is_empty() {
        Some(PropVar::bare(letter))
    } else {
        Some(PropVar::new(letter, Some(index(rest)?)))
    }
}

type R<T> = Result<T, ()>;

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    furthest: Option<(usize, BTreeSet<String>, String)>,
    hard: Option<ParseError>,
}

/// Per-sort hooks: how to read a leaf and how to build nodes.
trait Sort {
    type F;
    const QUANTIFIED: bool;
    /// Leaves may themselves start with `(` (parenthesized terms).
    const LEAF_PARENS: bool;

    fn leaf(p: &mut Parser<'_>) -> R<Self::F>;
    fn neg(a: Self::F) -> Self::F;
    fn bin(c: Connective, a: Self::F, b: Self::F) -> Self::F;
    fn quant(q: Quantifier, x: u32, body: Self::F) -> Self::F;
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Self, ParseError> {
        Ok(Parser {
            text,
            toks: lex(text)?,
            pos: 0,
            furthest: None,
            hard: None,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, o)| *o)
            .unwrap_or(self.text.len())
    }

    fn fail<T>(&mut self, expected: &str) -> R<T> {
        let offset = self.offset();
        let found = self
            .peek()
            .map(|t| t.to_string())
            .unwrap_or_else(|| "end of input".into());
        match &mut self.furthest {
            Some((o, set, _)) if *o == offset => {
                set.insert(expected.to_string());
            }
            Some((o, _, _)) if *o > offset => {}
            _ => self.furthest = Some((offset, BTreeSet::from([expected.to_string()]), found)),
        }
        Err(())
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> R<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.fail(&t.to_string())
        }
    }

    fn word(&mut self) -> Option<(String, usize)> {
        match self.toks.get(self.pos) {
            Some((Tok::Word(w), o)) => {
                let out = (w.clone(), *o);
                self.pos += 1;
                Some(out)
            }
            _ => None,
        }
    }

    fn finish<T>(mut self, result: R<T>) -> Result<T, ParseError> {
        let result = match result {
            Ok(v) if self.pos == self.toks.len() => Ok(v),
            Ok(_) => self.fail("end of input"),
            Err(()) => Err(()),
        };
        result.map_err(|()| {
            if let Some(e) = self.hard.take() {
                return e;
            }
            let (offset, expected, found) =
                self.furthest
                    .take()
                    .unwrap_or((0, BTreeSet::new(), String::new()));
            ParseError::Syntax {
                offset,
                expected,
                found,
            }
        })
    }

    fn equiv<S: Sort>(&mut self) -> R<S::F> {
        let mut lhs = self.imp::<S>()?;
        while self.eat(&Tok::DArrow) {
            let rhs = self.imp::<S>()?;
            lhs = S::bin(Connective::Equiv, lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp<S: Sort>(&mut self) -> R<S::F> {
        let lhs = self.disj::<S>()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.imp::<S>()?;
            return Ok(S::bin(Connective::Impl, lhs, rhs));
        }
        Ok(lhs)
    }

    fn disj<S: Sort>(&mut self) -> R<S::F> {
        let mut lhs = self.conj::<S>()?;
        while self.eat(&Tok::Bar) {
            let rhs = self.conj::<S>()?;
            lhs = S::bin(Connective::Disj, lhs, rhs);
        }
        Ok(lhs)
    }

    fn conj<S: Sort>(&mut self) -> R<S::F> {
        let mut lhs = self.unary::<S>()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.unary::<S>()?;
            lhs = S::bin(Connective::Conj, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary<S: Sort>(&mut self) -> R<S::F> {
        if self.eat(&Tok::Tilde) {
            return Ok(S::neg(self.unary::<S>()?));
        }
        if self.peek() != Some(&Tok::LParen) {
            return S::leaf(self);
        }
        if S::QUANTIFIED {
            let q = match self.peek_at(1) {
                Some(Tok::Word(w)) if w == "all" => Some(Quantifier::All),
                Some(Tok::Word(w)) if w == "ex" => Some(Quantifier::Ex),
                _ => None,
            };
            if let Some(q) = q {
                self.pos += 2;
                let x = match self.word() {
                    Some((w, _)) => match variable(&w) {
                        Some(x) => x,
                        None => {
                            self.pos -= 1;
                            return self.fail("variable x<k>");
                        }
                    },
                    None => return self.fail("variable x<k>"),
                };
                let body = self.equiv::<S>()?;
                self.expect(Tok::RParen)?;
                return Ok(S::quant(q, x, body));
            }
        }
        if S::LEAF_PARENS {
            let save = self.pos;
            if let Ok(f) = S::leaf(self) {
                return Ok(f);
            }
            if self.hard.is_some() {
                return Err(());
            }
            self.pos = save;
        }
        self.expect(Tok::LParen)?;
        let f = self.equiv::<S>()?;
        self.expect(Tok::RParen)?;
        Ok(f)
    }

    fn fo_args(&mut self) -> R<Vec<FoTerm>> {
        self.expect(Tok::LParen)?;
        let mut args = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(args);
        }
        loop {
            args.push(self.fo_term()?);
            if self.eat(&Tok::RParen) {
                return Ok(args);
            }
            if !self.eat(&Tok::Comma) {
                self.fail::<()>("','")?;
            }
        }
    }

    fn check_arity(&mut self, symbol: &str, offset: usize, declared: u32, used: usize) -> R<()> {
        if declared as usize != used {
            self.hard = Some(ParseError::Arity {
                offset,
                symbol: symbol.to_string(),
                declared,
                used: used as u32,
            });
            return Err(());
        }
        Ok(())
    }

    fn fo_term(&mut self) -> R<FoTerm> {
        let save = self.pos;
        let Some((w, offset)) = self.word() else {
            return self.fail("term");
        };
        if let Some(k) = variable(&w) {
            return Ok(FoTerm::Var(k));
        }
        if let Some(k) = w.strip_prefix('a').and_then(index) {
            return Ok(FoTerm::Const(k));
        }
        if let Some((i, n)) = indexed_letter(&w, 'f') {
            let args = self.fo_args()?;
            self.check_arity(&w, offset, n, args.len())?;
            return Ok(FoTerm::Fun { index: i, args });
        }
        self.pos = save;
        self.fail("term")
    }

    fn arith_sum(&mut self) -> R<ArithTerm> {
        let mut lhs = self.arith_product()?;
        while self.eat(&Tok::Plus) {
            let rhs = self.arith_product()?;
            lhs = ArithTerm::add(lhs, rhs);
        }
        Ok(lhs)
    }

    fn arith_product(&mut self) -> R<ArithTerm> {
        let mut lhs = self.arith_primary()?;
        while self.eat(&Tok::Star) {
            let rhs = self.arith_primary()?;
            lhs = ArithTerm::mul(lhs, rhs);
        }
        Ok(lhs)
    }

    fn arith_primary(&mut self) -> R<ArithTerm> {
        if self.eat(&Tok::LParen) {
            let t = self.arith_sum()?;
            self.expect(Tok::RParen)?;
            return Ok(t);
        }
        let save = self.pos;
        match self.word() {
            Some((w, _)) if w == "1" => Ok(ArithTerm::One),
            Some((w, _)) if w == "S" => {
                self.expect(Tok::LParen)?;
                let t = self.arith_sum()?;
                self.expect(Tok::RParen)?;
                Ok(ArithTerm::succ(t))
            }
            Some((w, _)) if variable(&w).is_some() => {
                Ok(ArithTerm::Var(variable(&w).unwrap_or_default()))
            }
            _ => {
                self.pos = save;
                self.fail("arithmetic term")
            }
        }
    }
}

struct PropSort;

impl Sort for PropSort {
    type F = PropFormula;
    const QUANTIFIED: bool = false;
    const LEAF_PARENS: bool = false;

    fn leaf(p: &mut Parser<'_>) -> R<PropFormula> {
        let save = p.pos;
        match p.word() {
            Some((w, _)) => match prop_var(&w) {
                Some(v) => Ok(PropFormula::Atom(v)),
                None => {
                    p.pos = save;
                    p.fail("propositional variable")
                }
            },
            None => {
                p.fail::<()>("'~'").ok();
                p.fail::<()>("'('").ok();
                p.fail("propositional variable")
            }
        }
    }

    fn neg(a: PropFormula) -> PropFormula {
        PropFormula::neg(a)
    }

    fn bin(c: Connective, a: PropFormula, b: PropFormula) -> PropFormula {
        PropFormula::bin(c, a, b)
    }

    fn quant(_: Quantifier, _: u32, body: PropFormula) -> PropFormula {
        body
    }
}

struct FoSort;

impl Sort for FoSort {
    type F = FoFormula;
    const QUANTIFIED: bool = true;
    const LEAF_PARENS: bool = false;

    fn leaf(p: &mut Parser<'_>) -> R<FoFormula> {
        let save = p.pos;
        if let Some((w, offset)) = p.word() {
            if let Some((i, n)) = indexed_letter(&w, 'P') {
                let args = p.fo_args()?;
                p.check_arity(&w, offset, n, args.len())?;
                return Ok(Formula::Atom(PredAtom::new(i, args)));
            }
            p.pos = save;
        } else {
            p.fail::<()>("'~'").ok();
            p.fail::<()>("'('").ok();
        }
        p.fail("predicate P<i>_<n>")
    }

    fn neg(a: FoFormula) -> FoFormula {
        Formula::neg(a)
    }

    fn bin(c: Connective, a: FoFormula, b: FoFormula) -> FoFormula {
        Formula::bin(c, a, b)
    }

    fn quant(q: Quantifier, x: u32, body: FoFormula) -> FoFormula {
        Formula::Quant(q, x, Box::new(body))
    }
}

struct ArithSort;

impl Sort for ArithSort {
    type F = ArithFormula;
    const QUANTIFIED: bool = true;
    const LEAF_PARENS: bool = true;

    fn leaf(p: &mut Parser<'_>) -> R<ArithFormula> {
        let lhs = p.arith_sum()?;
        let rel = if p.eat(&Tok::Eq) {
            ArithRel::Eq
        } else if p.eat(&Tok::Lt) {
            ArithRel::Lt
        } else {
            p.fail::<()>("'+'").ok();
            p.fail::<()>("'*'").ok();
            p.fail::<()>("'<'").ok();
            return p.fail("'='");
        };
        let rhs = p.arith_sum()?;
        Ok(Formula::Atom(ArithAtom { rel, lhs, rhs }))
    }

    fn neg(a: ArithFormula) -> ArithFormula {
        Formula::neg(a)
    }

    fn bin(c: Connective, a: ArithFormula, b: ArithFormula) -> ArithFormula {
        Formula::bin(c, a, b)
    }

    fn quant(q: Quantifier, x: u32, body: ArithFormula) -> ArithFormula {
        Formula::Quant(q, x, Box::new(body))
    }
}

pub fn parse_prop(text: &str) -> Result<PropFormula, ParseError> {
    let mut p = Parser::new(text)?;
    let r = p.equiv::<PropSort>();
    p.finish(r)
}

pub fn parse_fo(text: &str) -> Result<FoFormula, ParseError> {
    let mut p = Parser::new(text)?;
    let r = p.equiv::<FoSort>();
    p.finish(r)
}

pub fn parse_arith(text: &str) -> Result<ArithFormula, ParseError> {
    let mut p = Parser::new(text)?;
    let r = p.equiv::<ArithSort>();
    p.finish(r)
}

/// Parses a single arithmetic term such as `x1 + S(1)`.
pub fn parse_arith_term(text: &str) -> Result<ArithTerm, ParseError> {
    let mut p = Parser::new(text)?;
    let r = p.arith_sum();
    p.finish(r)
}

/// Parses a single first-order term such as `f1_2(x1, a3)`.
pub fn parse_fo_term(text: &str) -> Result<FoTerm, ParseError> {
    let mut p = Parser::new(text)?;
    let r = p.fo_term();
    p.finish(r)
}

/// Parses a propositional variable name such as `q12`.
pub fn parse_prop_var(text: &str) -> Result<PropVar, ParseError> {
    prop_var(text.trim()).ok_or_else(|| ParseError::Syntax {
        offset: 0,
        expected: BTreeSet::from(["propositional variable".to_string()]),
        found: format!("'{}'", text.trim()),
    })
}

/// Parses a variable name `x<k>`.
pub fn parse_variable(text: &str) -> Result<u32, ParseError> {
    variable(text.trim()).ok_or_else(|| ParseError::Syntax {
        offset: 0,
        expected: BTreeSet::from(["variable x<k>".to_string()]),
        found: format!("'{}'", text.trim()),
    })
}

macro_rules! from_str_via {
    ($ty:ty, $f:ident) => {
        impl std::str::FromStr for $ty {
            type Err = ParseError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                $f(s)
            }
        }
    };
}

from_str_via!(PropFormula, parse_prop);
from_str_via!(FoFormula, parse_fo);
from_str_via!(ArithFormula, parse_arith);
from_str_via!(ArithTerm, parse_arith_term);
from_str_via!(FoTerm, parse_fo_term);
from_str_via!(PropVar, parse_prop_var);
