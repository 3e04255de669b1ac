//! Reference implementations used as oracles by the integration tests.
//! Nothing here calls the library's evaluators, translations or substitution.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use atomlog::matrix::FiniteStructure;
use atomlog::syntax::{
    ArithFormula, ArithRel, Connective, FoFormula, FoTerm, Formula, PropFormula, PropVar,
    Quantifier,
};

// MD tables, rows indexed by the first argument.
pub const IMP: [[u8; 3]; 3] = [[1, 1, 1], [0, 1, 0], [0, 1, 2]];
pub const EQV: [[u8; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 2]];
pub const OR: [[u8; 3]; 3] = [[0, 1, 0], [1, 1, 1], [0, 1, 2]];
pub const AND: [[u8; 3]; 3] = [[0, 0, 0], [0, 1, 1], [0, 1, 2]];
pub const NEG: [u8; 3] = [1, 0, 2];

pub fn designated(v: u8) -> bool {
    v == 1 || v == 2
}

pub fn md_bin(c: Connective, a: u8, b: u8) -> u8 {
    let t = match c {
        Connective::Impl => &IMP,
        Connective::Equiv => &EQV,
        Connective::Disj => &OR,
        Connective::Conj => &AND,
    };
    t[a as usize][b as usize]
}

pub fn m2_bin(c: Connective, a: bool, b: bool) -> bool {
    match c {
        Connective::Impl => !a || b,
        Connective::Equiv => a == b,
        Connective::Disj => a || b,
        Connective::Conj => a && b,
    }
}

pub type Assign = BTreeMap<PropVar, u8>;

pub fn md_eval(f: &PropFormula, v: &Assign) -> u8 {
    match f {
        PropFormula::Atom(a) => v[a],
        PropFormula::Neg(a) => NEG[md_eval(a, v) as usize],
        PropFormula::Bin(c, a, b) => md_bin(*c, md_eval(a, v), md_eval(b, v)),
    }
}

pub fn m2_eval(f: &PropFormula, v: &Assign) -> bool {
    match f {
        PropFormula::Atom(a) => v[a] == 1,
        PropFormula::Neg(a) => !m2_eval(a, v),
        PropFormula::Bin(c, a, b) => m2_bin(*c, m2_eval(a, v), m2_eval(b, v)),
    }
}

pub fn atoms(f: &PropFormula) -> BTreeSet<PropVar> {
    let mut out = BTreeSet::new();
    fn go(f: &PropFormula, out: &mut BTreeSet<PropVar>) {
        match f {
            PropFormula::Atom(a) => {
                out.insert(*a);
            }
            PropFormula::Neg(a) => go(a, out),
            PropFormula::Bin(_, a, b) => {
                go(a, out);
                go(b, out);
            }
        }
    }
    go(f, &mut out);
    out
}

/// All assignments of `0..size` to the atoms of `f`, atoms ascending, the
/// last atom varying fastest.
pub fn assignments(f: &PropFormula, size: u8) -> Vec<Assign> {
    let atoms: Vec<PropVar> = atoms(f).into_iter().collect();
    let mut out = Vec::new();
    let mut digits = vec![0u8; atoms.len()];
    loop {
        out.push(atoms.iter().copied().zip(digits.iter().copied()).collect());
        let mut i = digits.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < size {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// The first assignment in lexicographic order giving a non-designated value.
pub fn md_counterexample(f: &PropFormula) -> Option<(Assign, u8)> {
    assignments(f, 3).into_iter().find_map(|v| {
        let x = md_eval(f, &v);
        (!designated(x)).then_some((v, x))
    })
}

pub fn md_valid(f: &PropFormula) -> bool {
    md_counterexample(f).is_none()
}

pub fn m2_valid(f: &PropFormula) -> bool {
    assignments(f, 2).iter().all(|v| m2_eval(f, v))
}

pub fn show(v: &Assign) -> String {
    v.iter()
        .map(|(k, x)| format!("{k}={x}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn neg(a: PropFormula) -> PropFormula {
    PropFormula::Neg(Box::new(a))
}

fn imp(a: PropFormula, b: PropFormula) -> PropFormula {
    PropFormula::Bin(Connective::Impl, Box::new(a), Box::new(b))
}

/// `a|b = ~a->b`, `a&b = ~(a->~b)`, `a<->b = ~((a->b)->~(b->a))`.
pub fn delta(f: &PropFormula) -> PropFormula {
    match f {
        PropFormula::Atom(_) => f.clone(),
        PropFormula::Neg(a) => neg(delta(a)),
        PropFormula::Bin(c, a, b) => {
            let (a, b) = (delta(a), delta(b));
            match c {
                Connective::Impl => imp(a, b),
                Connective::Disj => imp(neg(a), b),
                Connective::Conj => neg(imp(a, neg(b))),
                Connective::Equiv => neg(imp(imp(a.clone(), b.clone()), neg(imp(b, a)))),
            }
        }
    }
}

/// The `MD` value table of an operation expressed through `->` and `~` only.
pub fn delta_bin(c: Connective, a: u8, b: u8) -> u8 {
    let (i, n) = (
        |x: u8, y: u8| IMP[x as usize][y as usize],
        |x: u8| NEG[x as usize],
    );
    match c {
        Connective::Impl => i(a, b),
        Connective::Disj => i(n(a), b),
        Connective::Conj => n(i(a, n(b))),
        Connective::Equiv => n(i(i(a, b), n(i(b, a)))),
    }
}

pub fn subst(e: &BTreeMap<PropVar, PropFormula>, f: &PropFormula) -> PropFormula {
    match f {
        PropFormula::Atom(a) => e.get(a).cloned().unwrap_or_else(|| f.clone()),
        PropFormula::Neg(a) => neg(subst(e, a)),
        PropFormula::Bin(c, a, b) => {
            PropFormula::Bin(*c, Box::new(subst(e, a)), Box::new(subst(e, b)))
        }
    }
}

pub fn star(f: &PropFormula) -> PropFormula {
    neg(f.clone())
}

fn erase<A>(f: &Formula<A>, leaf: &impl Fn(&A) -> PropVar) -> PropFormula {
    match f {
        Formula::Atom(a) => PropFormula::Atom(leaf(a)),
        Formula::Neg(a) => neg(erase(a, leaf)),
        Formula::Bin(c, a, b) => {
            PropFormula::Bin(*c, Box::new(erase(a, leaf)), Box::new(erase(b, leaf)))
        }
        Formula::Quant(_, _, body) => erase(body, leaf),
    }
}

/// `=` to `p1`, `<` to `p2`, quantifiers dropped.
pub fn erase_i(f: &ArithFormula) -> PropFormula {
    erase(f, &|a| match a.rel {
        ArithRel::Eq => PropVar::p(1),
        ArithRel::Lt => PropVar::p(2),
    })
}

/// `P_k(..)` to `p_k`, quantifiers dropped.
pub fn erase_j(f: &FoFormula) -> PropFormula {
    erase(f, &|a| PropVar::p(a.index))
}

fn fo_term(t: &FoTerm, s: &FiniteStructure, env: &[(u32, usize)]) -> Option<usize> {
    match t {
        FoTerm::Var(k) => env.iter().rev().find(|(x, _)| x == k).map(|(_, v)| *v),
        FoTerm::Const(k) => s.constants.get(&format!("a{k}")).copied(),
        FoTerm::Fun { index, args } => {
            let f = s.functions.get(&format!("f{index}_{}", args.len()))?;
            let mut idx = 0;
            for a in args {
                idx = idx * s.domain + fo_term(a, s, env)?;
            }
            f.table.get(idx).copied()
        }
    }
}

/// Classical truth of `f` in `s`; `None` when a symbol or variable is uninterpreted.
pub fn fo_holds(f: &FoFormula, s: &FiniteStructure, env: &mut Vec<(u32, usize)>) -> Option<bool> {
    Some(match f {
        Formula::Atom(a) => {
            let rel = s.relations.get(&format!("P{}_{}", a.index, a.args.len()))?;
            let vals = a
                .args
                .iter()
                .map(|t| fo_term(t, s, env))
                .collect::<Option<Vec<_>>>()?;
            rel.tuples.contains(&vals)
        }
        Formula::Neg(a) => !fo_holds(a, s, env)?,
        Formula::Bin(c, a, b) => m2_bin(*c, fo_holds(a, s, env)?, fo_holds(b, s, env)?),
        Formula::Quant(q, x, body) => {
            let mut values = Vec::with_capacity(s.domain);
            for d in 0..s.domain {
                env.push((*x, d));
                let v = fo_holds(body, s, env);
                env.pop();
                values.push(v?);
            }
            match q {
                Quantifier::All => values.iter().all(|v| *v),
                Quantifier::Ex => values.iter().any(|v| *v),
            }
        }
    })
}

/// Number of formulas with exactly `n` connective occurrences over `k` atoms.
pub fn count_by_size(k: u64, n: usize) -> u64 {
    let mut s = vec![k];
    for m in 1..=n {
        let mut total = s[m - 1];
        for left in 0..m {
            total += 4 * s[left] * s[m - 1 - left];
        }
        s.push(total);
    }
    s[n]
}
