//! Certified corpora of logical axioms over the arithmetic signature.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::L2Certificate;
use crate::gen::enumerate_prop;
use crate::matrix::{validity, Builtin, LogicalMatrix};
use crate::syntax::{ArithAtom, ArithFormula, ArithTerm, Formula, Letter, PropFormula, PropVar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemaKind {
    /// Universal closures of classical tautologies with arithmetic atoms
    /// put for their variables.
    Skeleton,
    /// `∀x φ → φ(x/t)`.
    ForallInstantiation,
    /// `φ → ∀x φ`, `x` not free in `φ`.
    VacuousGeneralization,
    /// `φ(x/t) → ∃x φ` and `∃x φ → φ`, `x` not free in `φ`.
    ExistsDual,
}

/// Corpus description, read from JSON such as
/// `{"kinds": ["skeleton"], "maxSkeletonSize": 3, "maxTermDepth": 1, "atomPool": ["x1 = x2", "x1 < x2"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SchemaSpec {
    pub kinds: Vec<SchemaKind>,
    /// Connective count bound for skeletons over `p` and `q`.
    pub max_skeleton_size: usize,
    /// Nesting bound for instantiating terms.
    pub max_term_depth: usize,
    /// Atomic formulas used for skeleton variables and as quantifier-axiom bodies.
    pub atom_pool: Vec<ArithFormula>,
    /// At most this many members per kind.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<usize>,
}

impl Default for SchemaSpec {
    fn default() -> Self {
        let pool = ["x1 = x2", "x1 < x2", "x1 = x1", "x2 < x1 + 1"];
        SchemaSpec {
            kinds: vec![
                SchemaKind::Skeleton,
                SchemaKind::ForallInstantiation,
                SchemaKind::VacuousGeneralization,
                SchemaKind::ExistsDual,
            ],
            max_skeleton_size: 3,
            max_term_depth: 1,
            atom_pool: pool
                .iter()
                .map(|s| s.parse().expect("pool atom parses"))
                .collect(),
            limit: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("atom pool entry {0} is not an atomic formula")]
    NotAtomic(String),
    #[error("the atom pool is empty")]
    EmptyPool,
}

/// A corpus member with the certificate of classical validity its
/// construction provides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifiedAxiom {
    pub formula: ArithFormula,
    pub kind: SchemaKind,
    pub certificate: L2Certificate,
}

const VARS: [u32; 3] = [1, 2, 3];

/// Terms over `x1`, `x2`, `x3` and `1` nested at most `depth` deep.
fn terms(depth: usize) -> Vec<ArithTerm> {
    let mut all: Vec<ArithTerm> = VARS.iter().map(|k| ArithTerm::Var(*k)).collect();
    all.push(ArithTerm::One);
    for _ in 0..depth {
        let prev = all.clone();
        for a in &prev {
            all.push(ArithTerm::succ(a.clone()));
            for b in &prev {
                all.push(ArithTerm::add(a.clone(), b.clone()));
                all.push(ArithTerm::mul(a.clone(), b.clone()));
            }
        }
        all.sort();
        all.dedup();
    }
    all
}

/// Quantifier-axiom bodies: pool atoms, implications between distinct pool
/// atoms, and existential closures of pool atoms over one variable.
fn bodies(pool: &[ArithFormula]) -> Vec<ArithFormula> {
    let mut out: Vec<ArithFormula> = pool.to_vec();
    for a in pool {
        for b in pool {
            if a != b {
                out.push(Formula::imp(a.clone(), b.clone()));
            }
        }
    }
    for a in pool {
        for y in VARS {
            if a.free_vars().contains(&y) {
                out.push(Formula::exists(y, a.clone()));
            }
        }
    }
    out
}

fn skeleton_members(spec: &SchemaSpec, emit: &mut impl FnMut(ArithFormula, L2Certificate) -> bool) {
    let letters = [PropVar::bare(Letter::P), PropVar::bare(Letter::Q)];
    let m2 = LogicalMatrix::builtin(Builtin::M2);
    let pool = &spec.atom_pool;
    for skeleton in enumerate_prop(&letters, spec.max_skeleton_size) {
        if !validity(&m2, &skeleton).is_ok_and(|v| v.is_valid()) {
            continue;
        }
        let atoms: Vec<PropVar> = skeleton.atoms().into_iter().collect();
        let combos = pool.len().pow(atoms.len() as u32);
        for code in 0..combos {
            let mut rest = code;
            let mut choice = Vec::with_capacity(atoms.len());
            for _ in &atoms {
                choice.push(&pool[rest % pool.len()]);
                rest /= pool.len();
            }
            let instance = instantiate(&skeleton, &atoms, &choice);
            let closed = instance.universal_closure();
            let (vars, _) = closed.strip_universal_prefix();
            let taut = L2Certificate::Tautology {
                skeleton: skeleton.clone(),
            };
            let cert = if vars.is_empty() {
                taut
            } else {
                L2Certificate::Generalization {
                    vars,
                    inner: Box::new(taut),
                }
            };
            if !emit(closed, cert) {
                return;
            }
        }
    }
}

fn instantiate(f: &PropFormula, atoms: &[PropVar], choice: &[&ArithFormula]) -> ArithFormula {
    match f {
        PropFormula::Atom(v) => {
            let k = atoms.iter().position(|a| a == v).expect("atom listed");
            choice[k].clone()
        }
        PropFormula::Neg(a) => Formula::neg(instantiate(a, atoms, choice)),
        PropFormula::Bin(c, a, b) => Formula::bin(
            *c,
            instantiate(a, atoms, choice),
            instantiate(b, atoms, choice),
        ),
    }
}

fn forall_members(spec: &SchemaSpec, emit: &mut impl FnMut(ArithFormula, L2Certificate) -> bool) {
    let terms = terms(spec.max_term_depth);
    for body in bodies(&spec.atom_pool) {
        for x in VARS {
            if !body.free_vars().contains(&x) {
                continue;
            }
            for t in &terms {
                let Ok(inst) = body.substitute(x, t) else {
                    continue;
                };
                let f = Formula::imp(Formula::forall(x, body.clone()), inst);
                let cert = L2Certificate::ForallInstantiation {
                    var: x,
                    term: t.to_string(),
                };
                if !emit(f, cert) {
                    return;
                }
            }
        }
    }
}

fn vacuous_members(spec: &SchemaSpec, emit: &mut impl FnMut(ArithFormula, L2Certificate) -> bool) {
    for body in bodies(&spec.atom_pool) {
        for x in VARS {
            if body.free_vars().contains(&x) {
                continue;
            }
            let f = Formula::imp(body.clone(), Formula::forall(x, body.clone()));
            if !emit(f, L2Certificate::VacuousGeneralization { var: x }) {
                return;
            }
        }
    }
}

fn exists_members(spec: &SchemaSpec, emit: &mut impl FnMut(ArithFormula, L2Certificate) -> bool) {
    let terms = terms(spec.max_term_depth);
    for body in bodies(&spec.atom_pool) {
        for x in VARS {
            if body.free_vars().contains(&x) {
                for t in &terms {
                    let Ok(inst) = body.substitute(x, t) else {
                        continue;
                    };
                    let f = Formula::imp(inst, Formula::exists(x, body.clone()));
                    let cert = L2Certificate::ExistsIntroduction {
                        var: x,
                        term: t.to_string(),
                    };
                    if !emit(f, cert) {
                        return;
                    }
                }
            } else {
                let f = Formula::imp(Formula::exists(x, body.clone()), body.clone());
                if !emit(f, L2Certificate::VacuousExists { var: x }) {
                    return;
                }
            }
        }
    }
}

/// The certified corpus described by `spec`, kind by kind in the order
/// listed, without syntactic duplicates.
pub fn generate_logical_axioms(spec: &SchemaSpec) -> Result<Vec<CertifiedAxiom>, SpecError> {
    if spec.atom_pool.is_empty() {
        return Err(SpecError::EmptyPool);
    }
    if let Some(bad) = spec
        .atom_pool
        .iter()
        .find(|a| !matches!(a, Formula::Atom(ArithAtom { .. })))
    {
        return Err(SpecError::NotAtomic(bad.to_string()));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &kind in &spec.kinds {
        let mut taken = 0usize;
        let mut emit = |formula: ArithFormula, certificate: L2Certificate| {
            if spec.limit.is_some_and(|l| taken >= l) {
                return false;
            }
            if seen.insert(formula.clone()) {
                taken += 1;
                out.push(CertifiedAxiom {
                    formula,
                    kind,
                    certificate,
                });
            }
            true
        };
        match kind {
            SchemaKind::Skeleton => skeleton_members(spec, &mut emit),
            SchemaKind::ForallInstantiation => forall_members(spec, &mut emit),
            SchemaKind::VacuousGeneralization => vacuous_members(spec, &mut emit),
            SchemaKind::ExistsDual => exists_members(spec, &mut emit),
        }
    }
    Ok(out)
}
