//! The arithmetic axiom system: the specific axioms `ψ¹`–`ψ¹²` and `ψ¹⁴`,
//! the induction schema, classification of logical axioms into `L_D^r`, and
//! the bridge derivations recovering excluded axioms by modus ponens.

mod corpus;

use std::collections::BTreeSet;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::matrix::{
    validity, Builtin, LogicalMatrix, MatrixError, TruthValue, Valuation, Verdict,
};
use crate::proofcheck::{Derivation, Justification, PREMISE};
use crate::syntax::{
    ArithAtom, ArithFormula, ArithRel, ArithTerm, CaptureError, Connective, Formula, PropFormula,
    Quantifier, SortKind,
};
use crate::translate::{translate_i, EQ_ATOM, LT_ATOM};

pub use corpus::{generate_logical_axioms, CertifiedAxiom, SchemaKind, SchemaSpec, SpecError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("there is no specific axiom psi{0}; valid indices are 1..=12 and 14")]
pub struct AxiomRangeError(pub u32);

/// Names an axiom of the system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomId {
    /// `ψᵏ` for `k` in `1..=12` or `14`.
    Psi(u32),
    /// An instance of the induction schema.
    Induction(ArithFormula),
}

impl AxiomId {
    pub fn formula(&self) -> Result<ArithFormula, AxiomRangeError> {
        match self {
            AxiomId::Psi(k) => specific_axiom(*k),
            AxiomId::Induction(f) => Ok(f.clone()),
        }
    }
}

impl FromStr for AxiomId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let k = s
            .strip_prefix("psi")
            .and_then(|k| k.parse::<u32>().ok())
            .ok_or_else(|| format!("expected psi<k>, found {s:?}"))?;
        specific_axiom(k).map_err(|e| e.to_string())?;
        Ok(AxiomId::Psi(k))
    }
}

fn x(k: u32) -> ArithTerm {
    ArithTerm::Var(k)
}

fn one() -> ArithTerm {
    ArithTerm::One
}

fn eq(a: ArithTerm, b: ArithTerm) -> ArithFormula {
    Formula::Atom(ArithAtom {
        rel: ArithRel::Eq,
        lhs: a,
        rhs: b,
    })
}

fn lt(a: ArithTerm, b: ArithTerm) -> ArithFormula {
    Formula::Atom(ArithAtom {
        rel: ArithRel::Lt,
        lhs: a,
        rhs: b,
    })
}

fn all(vars: &[u32], body: ArithFormula) -> ArithFormula {
    vars.iter()
        .rev()
        .fold(body, |acc, k| Formula::forall(*k, acc))
}

fn plus(a: ArithTerm, b: ArithTerm) -> ArithTerm {
    ArithTerm::add(a, b)
}

fn times(a: ArithTerm, b: ArithTerm) -> ArithTerm {
    ArithTerm::mul(a, b)
}

/// `ψᵏ` as printed, for `k` in `1..=12` and `14`. `ψ¹³` is the induction
/// schema, see [`induction_instance`].
pub fn specific_axiom(k: u32) -> Result<ArithFormula, AxiomRangeError> {
    let imp = Formula::imp;
    Ok(match k {
        1 => all(&[1], eq(x(1), x(1))),
        2 => all(&[1, 2], imp(eq(x(1), x(2)), eq(x(2), x(1)))),
        3 => all(
            &[1, 2, 3],
            imp(eq(x(1), x(2)), imp(eq(x(2), x(3)), eq(x(1), x(3)))),
        ),
        4 => all(
            &[1, 2, 3, 4],
            imp(
                eq(x(1), x(2)),
                imp(eq(x(3), x(4)), eq(plus(x(1), x(3)), plus(x(2), x(4)))),
            ),
        ),
        5 => all(
            &[1, 2, 3, 4],
            imp(
                eq(x(1), x(2)),
                imp(eq(x(3), x(4)), eq(times(x(1), x(3)), times(x(2), x(4)))),
            ),
        ),
        6 => all(
            &[1, 2, 3, 4],
            imp(
                eq(x(1), x(2)),
                imp(eq(x(3), x(4)), imp(lt(x(1), x(3)), lt(x(2), x(4)))),
            ),
        ),
        7 => all(&[1], Formula::neg(eq(one(), plus(x(1), one())))),
        8 => all(
            &[1, 2],
            imp(eq(plus(x(1), one()), plus(x(2), one())), eq(x(1), x(2))),
        ),
        9 => all(
            &[1, 2],
            eq(plus(x(1), plus(x(2), one())), plus(plus(x(1), x(2)), one())),
        ),
        10 => all(&[1], eq(times(x(1), one()), x(1))),
        11 => all(
            &[1, 2],
            eq(
                times(x(1), plus(x(2), one())),
                plus(times(x(1), x(2)), x(1)),
            ),
        ),
        12 => all(
            &[1, 2],
            Formula::equiv(
                lt(x(1), x(2)),
                Formula::exists(3, eq(plus(x(1), x(3)), x(2))),
            ),
        ),
        14 => all(
            &[1, 2],
            Formula::equiv(
                Formula::exists(3, eq(plus(ArithTerm::succ(x(3)), x(1)), x(2))),
                lt(x(1), x(2)),
            ),
        ),
        _ => return Err(AxiomRangeError(k)),
    })
}

/// `X_P`: `ψ¹` through `ψ¹²`.
pub fn x_p() -> Vec<ArithFormula> {
    (1..=12)
        .map(|k| specific_axiom(k).expect("in range"))
        .collect()
}

/// `(A(1) ∧ ∀x (A(x) → A(x + 1))) → ∀x A(x)` for the induction variable `x`.
pub fn induction_instance(a: &ArithFormula, var: u32) -> Result<ArithFormula, CaptureError> {
    let base = a.substitute(var, &one())?;
    let step = a.substitute(var, &plus(x(var), one()))?;
    Ok(Formula::imp(
        Formula::and(base, Formula::forall(var, Formula::imp(a.clone(), step))),
        Formula::forall(var, a.clone()),
    ))
}

/// Recovers `(A, x)` when `f` is an induction instance.
pub fn match_induction(f: &ArithFormula) -> Option<(ArithFormula, u32)> {
    let (ante, concl) = f.as_impl()?;
    let Formula::Quant(Quantifier::All, var, a) = concl else {
        return None;
    };
    let Formula::Bin(Connective::Conj, _, _) = ante else {
        return None;
    };
    let candidate = (**a).clone();
    match induction_instance(&candidate, *var) {
        Ok(g) if &g == f => Some((candidate, *var)),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum AxiomClass {
    InLdr,
    /// The `i`-image takes the non-designated `value` under `witness`.
    Excluded {
        witness: Valuation,
        value: TruthValue,
    },
}

/// Classifies a logical axiom by validity of its `i`-image in `MD`. The
/// caller is responsible for the axiom being classically valid.
pub fn classify_axiom(f: &ArithFormula) -> Result<AxiomClass, MatrixError> {
    Ok(
        match validity(&LogicalMatrix::builtin(Builtin::MD), &translate_i(f))? {
            Verdict::Valid => AxiomClass::InLdr,
            Verdict::Counterexample { valuation, value } => AxiomClass::Excluded {
                witness: valuation,
                value,
            },
        },
    )
}

/// One line of a classification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    pub formula: ArithFormula,
    #[serde(flatten)]
    pub class: AxiomClass,
    pub image: PropFormula,
}

pub fn classification_record(f: &ArithFormula) -> Result<ClassificationRecord, MatrixError> {
    Ok(ClassificationRecord {
        formula: f.clone(),
        class: classify_axiom(f)?,
        image: translate_i(f),
    })
}

/// Which specific axiom opens a bridge derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Via {
    Psi12,
    Psi14,
}

impl Via {
    pub fn axiom(self) -> ArithFormula {
        specific_axiom(match self {
            Via::Psi12 => 12,
            Via::Psi14 => 14,
        })
        .expect("in range")
    }
}

impl FromStr for Via {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "psi12" => Ok(Via::Psi12),
            "psi14" => Ok(Via::Psi14),
            _ => Err(format!("expected psi12 or psi14, found {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error("{0} is already in L_D^r; no bridge is needed")]
    Precondition(ArithFormula),
    #[error("i-image {image} is not valid in MD: value {value} at {witness}")]
    Evidence {
        image: PropFormula,
        witness: Valuation,
        value: TruthValue,
    },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A bridge derivation with the matrix evidence for its middle step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bridge {
    pub derivation: Derivation,
    /// `i(ψ → α)`.
    pub image: PropFormula,
}

/// The three-step derivation of an excluded axiom `α`:
/// `ψ`, then `ψ → α` as an `L_D^r` axiom, then `α` by modus ponens.
/// With [`Via::Psi14`] the first step is a listed premise rather than an
/// axiom of `X_P`.
pub fn bridge_derivation(alpha: &ArithFormula, via: Via) -> Result<Bridge, BridgeError> {
    if classify_axiom(alpha)? == AxiomClass::InLdr {
        return Err(BridgeError::Precondition(alpha.clone()));
    }
    let psi = via.axiom();
    let link = Formula::imp(psi.clone(), alpha.clone());
    let image = translate_i(&link);
    if let Verdict::Counterexample { valuation, value } =
        validity(&LogicalMatrix::builtin(Builtin::MD), &image)?
    {
        return Err(BridgeError::Evidence {
            image,
            witness: valuation,
            value,
        });
    }
    let mut d = Derivation::new(SortKind::Arith);
    let first = match via {
        Via::Psi12 => Justification::Axiom("xp".into()),
        Via::Psi14 => {
            d.premises.push(psi.clone().into());
            Justification::Axiom(PREMISE.into())
        }
    };
    let a = d.push(psi, first);
    let b = d.push(link, Justification::Axiom("ldr".into()));
    d.push(alpha.clone(), Justification::Mp(a, b));
    Ok(Bridge {
        derivation: d,
        image,
    })
}

/// Outcome of checking the one-atom lemma on a corpus.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OneAtomReport {
    pub checked: usize,
    /// Members whose `i`-image is `p1` alone.
    pub only_eq: usize,
    /// Members whose `i`-image is `p2` alone.
    pub only_lt: usize,
    /// Members using both predicates; the lemma says nothing about them.
    pub exempt: usize,
    /// Single-predicate members classified into `L_D^r`.
    pub single_in_ldr: usize,
    /// Single-predicate members whose `MD` and `M2` verdicts disagree.
    pub violations: Vec<String>,
}

impl OneAtomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies that a one-atom `i`-image is `MD`-valid exactly when it is
/// classically valid, on every member of `corpus`.
pub fn one_atom_lemma_check<'a>(
    corpus: impl IntoIterator<Item = &'a ArithFormula>,
) -> Result<OneAtomReport, MatrixError> {
    let md = LogicalMatrix::builtin(Builtin::MD);
    let m2 = LogicalMatrix::builtin(Builtin::M2);
    let mut report = OneAtomReport::default();
    for f in corpus {
        report.checked += 1;
        let image = translate_i(f);
        let atoms: BTreeSet<_> = image.atoms();
        if atoms.len() != 1 {
            report.exempt += 1;
            continue;
        }
        if atoms.contains(&EQ_ATOM) {
            report.only_eq += 1;
        } else if atoms.contains(&LT_ATOM) {
            report.only_lt += 1;
        }
        let in_td = validity(&md, &image)?.is_valid();
        if in_td {
            report.single_in_ldr += 1;
        }
        if in_td != validity(&m2, &image)?.is_valid() {
            report.violations.push(f.to_string());
        }
    }
    Ok(report)
}
