//! Exhaustive search for finite structures falsifying a first-order formula.
//!
//! Candidates are visited by domain size first. Within one size an
//! interpretation is a digit string: for every predicate letter (sorted by
//! index, then arity) one membership bit per argument tuple, then for every
//! function letter one value per argument tuple, then one value per
//! constant; tuples are in lexicographic order. The string is counted like an
//! odometer whose first digit turns fastest, so the first falsifying
//! interpretation found is the least one in that order.

use std::collections::{BTreeMap, BTreeSet};

use crate::syntax::{Connective, FoFormula, FoTerm, Formula, PredLetter, Quantifier};

use super::structure::{tuples, FiniteStructure, FunctionTable, Relation};

/// Default ceiling on the number of candidate interpretations examined.
pub const DEFAULT_SEARCH_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A structure in which the universal closure of the input is false.
    Found(FiniteStructure),
    /// Every structure up to the bound satisfies the closure.
    Exhausted,
    /// The candidate budget ran out while scanning structures of this size.
    BudgetExceeded { domain: usize },
}

enum CTerm {
    Var(usize),
    Const(usize),
    Fun(usize, Vec<CTerm>),
}

enum CForm {
    Atom(usize, Vec<CTerm>),
    Neg(Box<CForm>),
    Bin(Connective, Box<CForm>, Box<CForm>),
    Quant(Quantifier, usize, Box<CForm>),
}

struct Symbols {
    preds: Vec<PredLetter>,
    funs: Vec<(u32, usize)>,
    consts: Vec<u32>,
    vars: Vec<u32>,
}

impl Symbols {
    fn collect(f: &FoFormula) -> Self {
        let preds: BTreeSet<PredLetter> = f.predicate_letters();
        let mut funs = BTreeSet::new();
        let mut consts = BTreeSet::new();
        f.visit_atoms(&mut |a| {
            for t in &a.args {
                t.visit(&mut |s| match s {
                    FoTerm::Fun { index, args } => {
                        funs.insert((*index, args.len()));
                    }
                    FoTerm::Const(k) => {
                        consts.insert(*k);
                    }
                    FoTerm::Var(_) => {}
                });
            }
        });
        Symbols {
            preds: preds.into_iter().collect(),
            funs: funs.into_iter().collect(),
            consts: consts.into_iter().collect(),
            vars: f.all_vars().into_iter().collect(),
        }
    }

    fn var_slot(&self, x: u32) -> usize {
        self.vars.binary_search(&x).expect("variable collected")
    }

    fn term(&self, t: &FoTerm) -> CTerm {
        match t {
            FoTerm::Var(k) => CTerm::Var(self.var_slot(*k)),
            FoTerm::Const(k) => {
                CTerm::Const(self.consts.binary_search(k).expect("constant collected"))
            }
            FoTerm::Fun { index, args } => CTerm::Fun(
                self.funs
                    .binary_search(&(*index, args.len()))
                    .expect("function collected"),
                args.iter().map(|a| self.term(a)).collect(),
            ),
        }
    }

    fn formula(&self, f: &FoFormula) -> CForm {
        match f {
            Formula::Atom(a) => {
                let letter = PredLetter {
                    index: a.index,
                    arity: a.args.len() as u32,
                };
                CForm::Atom(
                    self.preds
                        .binary_search(&letter)
                        .expect("predicate collected"),
                    a.args.iter().map(|t| self.term(t)).collect(),
                )
            }
            Formula::Neg(a) => CForm::Neg(Box::new(self.formula(a))),
            Formula::Bin(c, a, b) => {
                CForm::Bin(*c, Box::new(self.formula(a)), Box::new(self.formula(b)))
            }
            Formula::Quant(q, x, body) => {
                CForm::Quant(*q, self.var_slot(*x), Box::new(self.formula(body)))
            }
        }
    }
}

/// Digit layout of interpretations over one domain size.
struct Layout {
    domain: usize,
    pred_off: Vec<usize>,
    fun_off: Vec<usize>,
    const_off: usize,
    radix: Vec<usize>,
}

impl Layout {
    fn new(sym: &Symbols, domain: usize) -> Self {
        let mut radix = Vec::new();
        let mut pred_off = Vec::new();
        for p in &sym.preds {
            pred_off.push(radix.len());
            radix.extend(std::iter::repeat_n(2, domain.pow(p.arity)));
        }
        let mut fun_off = Vec::new();
        for (_, arity) in &sym.funs {
            fun_off.push(radix.len());
            radix.extend(std::iter::repeat_n(domain, domain.pow(*arity as u32)));
        }
        let const_off = radix.len();
        radix.extend(std::iter::repeat_n(domain, sym.consts.len()));
        Layout {
            domain,
            pred_off,
            fun_off,
            const_off,
            radix,
        }
    }

    fn candidates(&self) -> Option<u64> {
        self.radix
            .iter()
            .try_fold(1u64, |acc, &r| acc.checked_mul(r as u64))
    }
}

struct Interp<'a> {
    layout: &'a Layout,
    digits: &'a [usize],
}

impl Interp<'_> {
    fn tuple_index(&self, vals: &[usize]) -> usize {
        vals.iter().fold(0, |acc, &v| acc * self.layout.domain + v)
    }

    fn term(&self, t: &CTerm, env: &[usize]) -> usize {
        match t {
            CTerm::Var(s) => env[*s],
            CTerm::Const(c) => self.digits[self.layout.const_off + c],
            CTerm::Fun(f, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.term(a, env)).collect();
                self.digits[self.layout.fun_off[*f] + self.tuple_index(&vals)]
            }
        }
    }

    fn holds(&self, f: &CForm, env: &mut Vec<usize>) -> bool {
        match f {
            CForm::Atom(p, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.term(a, env)).collect();
                self.digits[self.layout.pred_off[*p] + self.tuple_index(&vals)] == 1
            }
            CForm::Neg(a) => !self.holds(a, env),
            CForm::Bin(c, a, b) => {
                let x = self.holds(a, env);
                match c {
                    Connective::Conj if !x => false,
                    Connective::Disj if x => true,
                    Connective::Impl if !x => true,
                    _ => {
                        let y = self.holds(b, env);
                        match c {
                            Connective::Equiv => x == y,
                            _ => y,
                        }
                    }
                }
            }
            CForm::Quant(q, slot, body) => {
                let saved = env[*slot];
                let want = matches!(q, Quantifier::All);
                let mut result = want;
                for e in 0..self.layout.domain {
                    env[*slot] = e;
                    if self.holds(body, env) != want {
                        result = !want;
                        break;
                    }
                }
                env[*slot] = saved;
                result
            }
        }
    }
}

fn build_structure(sym: &Symbols, layout: &Layout, digits: &[usize]) -> FiniteStructure {
    let n = layout.domain;
    let mut relations = BTreeMap::new();
    for (p, off) in sym.preds.iter().zip(&layout.pred_off) {
        let arity = p.arity as usize;
        let tuples_in: BTreeSet<Vec<usize>> = tuples(n, arity)
            .enumerate()
            .filter(|(i, _)| digits[off + i] == 1)
            .map(|(_, t)| t)
            .collect();
        relations.insert(
            p.to_string(),
            Relation {
                arity,
                tuples: tuples_in,
            },
        );
    }
    let mut functions = BTreeMap::new();
    for ((index, arity), off) in sym.funs.iter().zip(&layout.fun_off) {
        let len = n.pow(*arity as u32);
        functions.insert(
            format!("f{index}_{arity}"),
            FunctionTable {
                arity: *arity,
                table: digits[*off..off + len].to_vec(),
            },
        );
    }
    let constants = sym
        .consts
        .iter()
        .enumerate()
        .map(|(i, k)| (format!("a{k}"), digits[layout.const_off + i]))
        .collect();
    FiniteStructure {
        domain: n,
        relations,
        functions,
        constants,
    }
}

/// Looks for the least structure (domain size first) in which the universal
/// closure of `f` is false, examining at most `budget` interpretations.
pub fn search_countermodel(f: &FoFormula, max_domain: usize, budget: u64) -> SearchOutcome {
    let closed = f.universal_closure();
    let sym = Symbols::collect(&closed);
    let compiled = sym.formula(&closed);
    let mut remaining = budget;
    for domain in 1..=max_domain {
        let layout = Layout::new(&sym, domain);
        match layout.candidates() {
            Some(c) if c <= remaining => remaining -= c,
            _ => return SearchOutcome::BudgetExceeded { domain },
        }
        let mut digits = vec![0usize; layout.radix.len()];
        let mut env = vec![0usize; sym.vars.len()];
        loop {
            let interp = Interp {
                layout: &layout,
                digits: &digits,
            };
            if !interp.holds(&compiled, &mut env) {
                return SearchOutcome::Found(build_structure(&sym, &layout, &digits));
            }
            let mut i = 0;
            loop {
                if i == digits.len() {
                    break;
                }
                digits[i] += 1;
                if digits[i] < layout.radix[i] {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
    }
    SearchOutcome::Exhausted
}

/// A structure certifying that `f` is not classically valid, if one exists
/// with at most `max_domain` elements. `None` is not evidence of validity.
pub fn fo_countermodel_search(f: &FoFormula, max_domain: usize) -> Option<FiniteStructure> {
    match search_countermodel(f, max_domain, DEFAULT_SEARCH_BUDGET) {
        SearchOutcome::Found(s) => Some(s),
        SearchOutcome::Exhausted | SearchOutcome::BudgetExceeded { .. } => None,
    }
}
