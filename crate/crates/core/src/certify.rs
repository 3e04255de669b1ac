//! Syntactic certificates of classical first-order validity.
//!
//! [`certify_l2`] recognizes a decidable fragment of `L₂`: generalizations of
//! tautology instances, the quantifier axioms, and weakenings of certified
//! formulas. Every recognized formula is classically valid; the converse
//! does not hold.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Serialize;

use crate::matrix::{validity, Builtin, LogicalMatrix};
use crate::syntax::{Atomic, Connective, Formula, PropFormula, PropVar, Quantifier, Term};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum L2Certificate {
    /// Atoms and quantified subformulas abstracted to variables give a
    /// classical tautology.
    Tautology { skeleton: PropFormula },
    /// `∀x φ → φ(x/t)` with `t` free for `x`.
    ForallInstantiation { var: u32, term: String },
    /// `φ → ∀x φ` with `x` not free in `φ`.
    VacuousGeneralization { var: u32 },
    /// `φ(x/t) → ∃x φ` with `t` free for `x`.
    ExistsIntroduction { var: u32, term: String },
    /// `∃x φ → φ` with `x` not free in `φ`.
    VacuousExists { var: u32 },
    /// `χ → α` where `α` is certified.
    Weakening { consequent: Box<L2Certificate> },
    /// Universal quantifiers in front of a certified formula.
    Generalization {
        vars: Vec<u32>,
        inner: Box<L2Certificate>,
    },
}

impl Display for L2Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            L2Certificate::Tautology { skeleton } => write!(f, "tautology instance of {skeleton}"),
            L2Certificate::ForallInstantiation { var, term } => {
                write!(f, "instantiation of x{var} by {term}")
            }
            L2Certificate::VacuousGeneralization { var } => {
                write!(f, "vacuous generalization on x{var}")
            }
            L2Certificate::ExistsIntroduction { var, term } => {
                write!(f, "existential introduction of x{var} from {term}")
            }
            L2Certificate::VacuousExists { var } => write!(f, "vacuous existential on x{var}"),
            L2Certificate::Weakening { consequent } => write!(f, "weakening of ({consequent})"),
            L2Certificate::Generalization { vars, inner } => {
                let vars: Vec<String> = vars.iter().map(|x| format!("x{x}")).collect();
                write!(f, "generalization on {} of ({inner})", vars.join(", "))
            }
        }
    }
}

/// Replaces atoms and quantified subformulas by `p1`, `p2`, ... in order of
/// first occurrence.
pub fn abstract_skeleton<A: Atomic>(f: &Formula<A>) -> PropFormula {
    fn go<A: Atomic>(f: &Formula<A>, names: &mut BTreeMap<Formula<A>, PropVar>) -> PropFormula {
        match f {
            Formula::Neg(a) => PropFormula::neg(go(a, names)),
            Formula::Bin(c, a, b) => {
                let a = go(a, names);
                PropFormula::bin(*c, a, go(b, names))
            }
            Formula::Atom(_) | Formula::Quant(..) => {
                let next = PropVar::p(names.len() as u32 + 1);
                PropFormula::Atom(*names.entry(f.clone()).or_insert(next))
            }
        }
    }
    go(f, &mut BTreeMap::new())
}

/// The term `t` with `body(x/t) = target`, if there is one. When `x` is not
/// free in `body` any term works and `x` itself is returned.
fn instantiating_term<A: Atomic>(
    body: &Formula<A>,
    x: u32,
    target: &Formula<A>,
) -> Option<A::Term> {
    if !body.free_vars().contains(&x) {
        return (body == target).then(|| A::Term::var(x));
    }
    let mut candidates = Vec::new();
    target.visit_atoms(&mut |a| {
        for t in a.terms() {
            t.collect_subterms(&mut candidates);
        }
    });
    candidates.sort();
    candidates.dedup();
    candidates
        .into_iter()
        .find(|t| body.substitute(x, t).is_ok_and(|inst| &inst == target))
}

fn certify_matrix<A>(f: &Formula<A>) -> Option<L2Certificate>
where
    A: Atomic,
    A::Term: Display,
{
    let skeleton = abstract_skeleton(f);
    if skeleton.atoms().len() <= crate::matrix::DEFAULT_ATOM_CAP
        && validity(&LogicalMatrix::builtin(Builtin::M2), &skeleton).is_ok_and(|v| v.is_valid())
    {
        return Some(L2Certificate::Tautology { skeleton });
    }
    let Formula::Bin(Connective::Impl, lhs, rhs) = f else {
        return None;
    };
    if let Formula::Quant(Quantifier::All, x, body) = &**lhs {
        if let Some(t) = instantiating_term(body, *x, rhs) {
            return Some(L2Certificate::ForallInstantiation {
                var: *x,
                term: t.to_string(),
            });
        }
    }
    if let Formula::Quant(q, x, body) = &**rhs {
        match q {
            Quantifier::All if body == lhs && !lhs.free_vars().contains(x) => {
                return Some(L2Certificate::VacuousGeneralization { var: *x });
            }
            Quantifier::Ex => {
                if let Some(t) = instantiating_term(body, *x, lhs) {
                    return Some(L2Certificate::ExistsIntroduction {
                        var: *x,
                        term: t.to_string(),
                    });
                }
            }
            _ => {}
        }
    }
    if let Formula::Quant(Quantifier::Ex, x, body) = &**lhs {
        if body == rhs && !rhs.free_vars().contains(x) {
            return Some(L2Certificate::VacuousExists { var: *x });
        }
    }
    certify_l2(rhs).map(|c| L2Certificate::Weakening {
        consequent: Box::new(c),
    })
}

/// A certificate that `f` is classically valid, when `f` falls in the
/// recognized fragment.
pub fn certify_l2<A>(f: &Formula<A>) -> Option<L2Certificate>
where
    A: Atomic,
    A::Term: Display,
{
    let (vars, matrix) = f.strip_universal_prefix();
    let inner = certify_matrix(matrix)?;
    Some(if vars.is_empty() {
        inner
    } else {
        L2Certificate::Generalization {
            vars,
            inner: Box::new(inner),
        }
    })
}
