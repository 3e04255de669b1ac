//! Finite first-order structures and classical satisfaction in them.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{
    ArithAtom, ArithRel, ArithTerm, Atomic, FoTerm, Formula, PredAtom, Quantifier,
};

/// A relation given by its tuples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub arity: usize,
    pub tuples: BTreeSet<Vec<usize>>,
}

/// A total function, tabulated over argument tuples in lexicographic order
/// (first argument most significant).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionTable {
    pub arity: usize,
    pub table: Vec<usize>,
}

impl FunctionTable {
    fn lookup(&self, domain: usize, args: &[usize]) -> usize {
        let idx = args.iter().fold(0, |acc, &a| acc * domain + a);
        self.table[idx]
    }
}

/// A finite interpretation. Symbols are keyed by their rendered names:
/// `P<i>_<n>`, `f<i>_<n>`, `a<k>` for the first-order language and
/// `=`, `<`, `S`, `+`, `*`, `1` for arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FiniteStructure {
    pub domain: usize,
    pub relations: BTreeMap<String, Relation>,
    pub functions: BTreeMap<String, FunctionTable>,
    pub constants: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("structure does not interpret {0}")]
    InterpretationMissing(String),
    #[error("assignment does not cover x{0}")]
    UnassignedVariable(u32),
    #[error("{symbol} interpreted with arity {found}, used with {expected}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("{0} yields an element outside the domain")]
    OutOfDomain(String),
}

/// Variable assignment; later entries shadow earlier ones.
#[derive(Debug, Clone, Default)]
pub struct Assignment(Vec<(u32, usize)>);

impl Assignment {
    pub fn new() -> Self {
        Assignment(Vec::new())
    }

    pub fn with(mut self, var: u32, value: usize) -> Self {
        self.0.push((var, value));
        self
    }

    fn get(&self, var: u32) -> Result<usize, EvalError> {
        self.0
            .iter()
            .rev()
            .find(|(v, _)| *v == var)
            .map(|(_, e)| *e)
            .ok_or(EvalError::UnassignedVariable(var))
    }
}

impl FromIterator<(u32, usize)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (u32, usize)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

impl FiniteStructure {
    pub fn new(domain: usize) -> Self {
        FiniteStructure {
            domain,
            ..Default::default()
        }
    }

    pub fn with_relation(
        mut self,
        name: &str,
        arity: usize,
        tuples: impl IntoIterator<Item = Vec<usize>>,
    ) -> Self {
        self.relations.insert(
            name.to_string(),
            Relation {
                arity,
                tuples: tuples.into_iter().collect(),
            },
        );
        self
    }

    /// Adds a relation given by its characteristic predicate.
    pub fn with_relation_fn(
        self,
        name: &str,
        arity: usize,
        holds: impl Fn(&[usize]) -> bool,
    ) -> Self {
        let tuples: Vec<Vec<usize>> = tuples(self.domain, arity).filter(|t| holds(t)).collect();
        self.with_relation(name, arity, tuples)
    }

    pub fn with_function(
        mut self,
        name: &str,
        arity: usize,
        f: impl Fn(&[usize]) -> usize,
    ) -> Self {
        let table = tuples(self.domain, arity).map(|t| f(&t)).collect();
        self.functions
            .insert(name.to_string(), FunctionTable { arity, table });
        self
    }

    pub fn with_constant(mut self, name: &str, value: usize) -> Self {
        self.constants.insert(name.to_string(), value);
        self
    }

    /// Arithmetic modulo `n`: `1`, successor, `+`, `*` computed mod `n`,
    /// `=` as identity and `<` as the order of the residues.
    pub fn arithmetic_mod(n: usize) -> Self {
        FiniteStructure::new(n)
            .with_constant("1", 1 % n)
            .with_function("S", 1, |a| (a[0] + 1) % n)
            .with_function("+", 2, |a| (a[0] + a[1]) % n)
            .with_function("*", 2, |a| (a[0] * a[1]) % n)
            .with_relation_fn("=", 2, |a| a[0] == a[1])
            .with_relation_fn("<", 2, |a| a[0] < a[1])
    }

    /// Checks that every table stays inside the domain.
    pub fn validate(&self) -> Result<(), EvalError> {
        for (name, r) in &self.relations {
            if r.tuples
                .iter()
                .any(|t| t.len() != r.arity || t.iter().any(|&e| e >= self.domain))
            {
                return Err(EvalError::OutOfDomain(name.clone()));
            }
        }
        for (name, f) in &self.functions {
            if f.table.len() != self.domain.pow(f.arity as u32)
                || f.table.iter().any(|&e| e >= self.domain)
            {
                return Err(EvalError::OutOfDomain(name.clone()));
            }
        }
        for (name, &c) in &self.constants {
            if c >= self.domain {
                return Err(EvalError::OutOfDomain(name.clone()));
            }
        }
        Ok(())
    }

    fn relation(&self, name: &str, arity: usize) -> Result<&Relation, EvalError> {
        let r = self
            .relations
            .get(name)
            .ok_or_else(|| EvalError::InterpretationMissing(name.to_string()))?;
        if r.arity != arity {
            return Err(EvalError::ArityMismatch {
                symbol: name.to_string(),
                expected: arity,
                found: r.arity,
            });
        }
        Ok(r)
    }

    fn apply(&self, name: &str, args: &[usize]) -> Result<usize, EvalError> {
        let f = self
            .functions
            .get(name)
            .ok_or_else(|| EvalError::InterpretationMissing(name.to_string()))?;
        if f.arity != args.len() {
            return Err(EvalError::ArityMismatch {
                symbol: name.to_string(),
                expected: args.len(),
                found: f.arity,
            });
        }
        let out = f.lookup(self.domain, args);
        if out >= self.domain {
            return Err(EvalError::OutOfDomain(name.to_string()));
        }
        Ok(out)
    }

    fn constant(&self, name: &str) -> Result<usize, EvalError> {
        self.constants
            .get(name)
            .copied()
            .ok_or_else(|| EvalError::InterpretationMissing(name.to_string()))
    }
}

/// All `arity`-tuples over `0..domain` in lexicographic order.
pub(crate) fn tuples(domain: usize, arity: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = domain.pow(arity as u32);
    (0..total).map(move |mut code| {
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = code % domain;
            code /= domain;
        }
        t
    })
}

/// Atoms whose truth can be decided in a [`FiniteStructure`].
pub trait FiniteSemantics: Atomic {
    fn holds(&self, s: &FiniteStructure, env: &Assignment) -> Result<bool, EvalError>;
}

fn fo_term(t: &FoTerm, s: &FiniteStructure, env: &Assignment) -> Result<usize, EvalError> {
    match t {
        FoTerm::Var(k) => env.get(*k),
        FoTerm::Const(k) => s.constant(&format!("a{k}")),
        FoTerm::Fun { index, args } => {
            let vals = args
                .iter()
                .map(|a| fo_term(a, s, env))
                .collect::<Result<Vec<_>, _>>()?;
            s.apply(&format!("f{}_{}", index, args.len()), &vals)
        }
    }
}

impl FiniteSemantics for PredAtom {
    fn holds(&self, s: &FiniteStructure, env: &Assignment) -> Result<bool, EvalError> {
        let name = format!("P{}_{}", self.index, self.args.len());
        let rel = s.relation(&name, self.args.len())?;
        let vals = self
            .args
            .iter()
            .map(|a| fo_term(a, s, env))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(rel.tuples.contains(&vals))
    }
}

fn arith_term(t: &ArithTerm, s: &FiniteStructure, env: &Assignment) -> Result<usize, EvalError> {
    match t {
        ArithTerm::Var(k) => env.get(*k),
        ArithTerm::One => s.constant("1"),
        ArithTerm::Succ(a) => s.apply("S", &[arith_term(a, s, env)?]),
        ArithTerm::Add(a, b) => s.apply("+", &[arith_term(a, s, env)?, arith_term(b, s, env)?]),
        ArithTerm::Mul(a, b) => s.apply("*", &[arith_term(a, s, env)?, arith_term(b, s, env)?]),
    }
}

impl FiniteSemantics for ArithAtom {
    fn holds(&self, s: &FiniteStructure, env: &Assignment) -> Result<bool, EvalError> {
        let name = match self.rel {
            ArithRel::Eq => "=",
            ArithRel::Lt => "<",
        };
        let rel = s.relation(name, 2)?;
        let pair = vec![
            arith_term(&self.lhs, s, env)?,
            arith_term(&self.rhs, s, env)?,
        ];
        Ok(rel.tuples.contains(&pair))
    }
}

/// Classical two-valued satisfaction of `f` in `s` under `env`; quantifiers
/// range over the whole finite domain.
pub fn fo_eval_finite<A: FiniteSemantics>(
    f: &Formula<A>,
    s: &FiniteStructure,
    env: &Assignment,
) -> Result<bool, EvalError> {
    use crate::syntax::Connective::*;
    Ok(match f {
        Formula::Atom(a) => a.holds(s, env)?,
        Formula::Neg(a) => !fo_eval_finite(a, s, env)?,
        Formula::Bin(c, a, b) => {
            let x = fo_eval_finite(a, s, env)?;
            let y = fo_eval_finite(b, s, env)?;
            match c {
                Impl => !x || y,
                Disj => x || y,
                Conj => x && y,
                Equiv => x == y,
            }
        }
        Formula::Quant(q, x, body) => {
            let mut inner = env.clone();
            inner.0.push((*x, 0));
            let mut result = matches!(q, Quantifier::All);
            for e in 0..s.domain {
                inner.0.last_mut().expect("pushed above").1 = e;
                let v = fo_eval_finite(body, s, &inner)?;
                if v != result {
                    result = v;
                    break;
                }
            }
            result
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_arith, parse_fo};

    #[test]
    fn forall_over_singleton() {
        let f = parse_fo("(all x1 P1_1(x1))").unwrap();
        let empty = FiniteStructure::new(1).with_relation("P1_1", 1, []);
        assert!(!fo_eval_finite(&f, &empty, &Assignment::new()).unwrap());
        let full = FiniteStructure::new(1).with_relation("P1_1", 1, [vec![0]]);
        assert!(fo_eval_finite(&f, &full, &Assignment::new()).unwrap());
    }

    #[test]
    fn psi7_fails_mod_three() {
        let psi7 = parse_arith("(all x1 ~(1 = x1 + 1))").unwrap();
        let z3 = FiniteStructure::arithmetic_mod(3);
        z3.validate().unwrap();
        assert!(!fo_eval_finite(&psi7, &z3, &Assignment::new()).unwrap());
        // x1 = 0 is the falsifying instance
        let body = parse_arith("~(1 = x1 + 1)").unwrap();
        assert!(!fo_eval_finite(&body, &z3, &Assignment::new().with(1, 0)).unwrap());
        assert!(fo_eval_finite(&body, &z3, &Assignment::new().with(1, 1)).unwrap());
    }

    #[test]
    fn missing_symbols_and_variables() {
        let f = parse_fo("P2_1(a1)").unwrap();
        let s = FiniteStructure::new(2).with_relation("P2_1", 1, [vec![1]]);
        assert_eq!(
            fo_eval_finite(&f, &s, &Assignment::new()),
            Err(EvalError::InterpretationMissing("a1".into()))
        );
        let g = parse_fo("P2_1(x4)").unwrap();
        assert_eq!(
            fo_eval_finite(&g, &s, &Assignment::new()),
            Err(EvalError::UnassignedVariable(4))
        );
        let s = s.with_constant("a1", 1);
        assert!(fo_eval_finite(&f, &s, &Assignment::new()).unwrap());
    }

    #[test]
    fn functions_and_shadowing() {
        let f = parse_fo("(ex x1 P1_2(f1_1(x1), x1))").unwrap();
        let s = FiniteStructure::new(3)
            .with_function("f1_1", 1, |a| (a[0] + 1) % 3)
            .with_relation("P1_2", 2, [vec![2, 1]]);
        assert!(fo_eval_finite(&f, &s, &Assignment::new().with(1, 0)).unwrap());
    }

    #[test]
    fn json_shape() {
        let s = FiniteStructure::new(2).with_relation("P1_1", 1, [vec![0]]);
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["domain"], 2);
        assert_eq!(v["relations"]["P1_1"]["tuples"], serde_json::json!([[0]]));
        assert!(v.get("functions").is_some() && v.get("constants").is_some());
        let back: FiniteStructure = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }
}
