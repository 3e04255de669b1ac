//! Atomic and classical entailment, and membership in `L_D`.
//!
//! Atomic entailment over `⟨R₀, T_D⟩` is decided by reduction to validity of
//! `φ → ψ` in `MD`. The substitution-quantified definition it replaces is only
//! sampled, by [`direct_definition_check`], as a consistency harness.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::gen::random_prop;
use crate::matrix::{
    search_countermodel, validity, validity_with_cap, Builtin, FiniteStructure, LogicalMatrix,
    MatrixError, SearchOutcome, TruthValue, Valuation, Verdict, DEFAULT_ATOM_CAP,
    DEFAULT_SEARCH_BUDGET,
};
use crate::syntax::{FoFormula, FoTerm, Letter, PropFormula, PropVar};
use crate::translate::{subst_prop, translate_j, PropSubstitution};

/// How the `L₂` (classical first-order validity) half of `L_D` membership is handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum L2Mode {
    /// The caller vouches for classical validity.
    Assume,
    /// Require the propositional skeleton to be a classical tautology.
    SkeletonNecessary,
    /// Search for a finite countermodel with at most `max_domain` elements.
    BoundedRefute { max_domain: usize },
}

impl L2Mode {
    /// `BoundedRefute` with the bound clamped to at least one element.
    pub fn bounded(max_domain: usize) -> Self {
        L2Mode::BoundedRefute {
            max_domain: max_domain.max(1),
        }
    }
}

/// How much a verdict can be trusted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Decided by an exhaustive matrix scan.
    Exact,
    /// The propositional part was decided exactly; classical validity was taken on trust.
    L2Assumed,
    /// The propositional part was decided exactly; classical validity was
    /// neither established nor refuted. Not authoritative.
    L2Unknown { note: String },
    /// Refuted by a sampled substitution.
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum FailReason {
    /// `formula` takes the non-designated `value` under `witness`.
    NotValidInMatrix {
        matrix: String,
        formula: PropFormula,
        witness: Valuation,
        value: TruthValue,
    },
    /// Under `substitution` the premise's image has atoms (`offending`)
    /// missing from the conclusion's image.
    AtomInclusionFails {
        substitution: PropSubstitution,
        offending: BTreeSet<PropVar>,
    },
    /// A finite structure falsifying the universal closure.
    L2Refuted { structure: FiniteStructure },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EntailVerdict {
    Holds {
        evidence: Evidence,
    },
    Fails {
        reason: FailReason,
        evidence: Evidence,
    },
}

impl EntailVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, EntailVerdict::Holds { .. })
    }

    pub fn evidence(&self) -> &Evidence {
        match self {
            EntailVerdict::Holds { evidence } | EntailVerdict::Fails { evidence, .. } => evidence,
        }
    }

    /// False only for verdicts marked [`Evidence::L2Unknown`].
    pub fn is_authoritative(&self) -> bool {
        !matches!(self.evidence(), Evidence::L2Unknown { .. })
    }

    pub fn reason(&self) -> Option<&FailReason> {
        match self {
            EntailVerdict::Fails { reason, .. } => Some(reason),
            EntailVerdict::Holds { .. } => None,
        }
    }
}

fn matrix_verdict(
    which: Builtin,
    f: PropFormula,
    cap: usize,
) -> Result<EntailVerdict, MatrixError> {
    let m = LogicalMatrix::builtin(which);
    Ok(match validity_with_cap(&m, &f, cap)? {
        Verdict::Valid => EntailVerdict::Holds {
            evidence: Evidence::Exact,
        },
        Verdict::Counterexample { valuation, value } => EntailVerdict::Fails {
            reason: FailReason::NotValidInMatrix {
                matrix: m.name().to_string(),
                formula: f,
                witness: valuation,
                value,
            },
            evidence: Evidence::Exact,
        },
    })
}

/// Decides whether `ψ` results atomically from `φ` over `⟨R₀, T_D⟩`, as
/// validity of `φ → ψ` in `MD`.
pub fn atomic_entails_prop(
    phi: &PropFormula,
    psi: &PropFormula,
) -> Result<EntailVerdict, MatrixError> {
    atomic_entails_prop_with_cap(phi, psi, DEFAULT_ATOM_CAP)
}

pub fn atomic_entails_prop_with_cap(
    phi: &PropFormula,
    psi: &PropFormula,
    cap: usize,
) -> Result<EntailVerdict, MatrixError> {
    matrix_verdict(Builtin::MD, PropFormula::imp(phi.clone(), psi.clone()), cap)
}

/// Classical propositional entailment: validity of `φ → ψ` in `M2`.
pub fn classical_entails_prop(
    phi: &PropFormula,
    psi: &PropFormula,
) -> Result<EntailVerdict, MatrixError> {
    classical_entails_prop_with_cap(phi, psi, DEFAULT_ATOM_CAP)
}

pub fn classical_entails_prop_with_cap(
    phi: &PropFormula,
    psi: &PropFormula,
    cap: usize,
) -> Result<EntailVerdict, MatrixError> {
    matrix_verdict(Builtin::M2, PropFormula::imp(phi.clone(), psi.clone()), cap)
}

/// A one-element structure falsifying `f` when its `j`-image is not a
/// classical tautology. Every atom `P_k(..)` is read as the value of `p_k`
/// in the first classical counterexample.
pub fn skeleton_refutation(f: &FoFormula) -> Result<Option<FiniteStructure>, MatrixError> {
    let valuation = match validity(&LogicalMatrix::builtin(Builtin::M2), &translate_j(f))? {
        Verdict::Valid => return Ok(None),
        Verdict::Counterexample { valuation, .. } => valuation,
    };
    let mut s = FiniteStructure::new(1);
    for letter in f.predicate_letters() {
        let on = valuation.get(&PropVar::p(letter.index)) == Some(TruthValue(1));
        s = s.with_relation_fn(&letter.to_string(), letter.arity as usize, |_| on);
    }
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
    for (index, arity) in funs {
        s = s.with_function(&format!("f{index}_{arity}"), arity, |_| 0);
    }
    for k in consts {
        s = s.with_constant(&format!("a{k}"), 0);
    }
    Ok(Some(s))
}

/// Membership in `L_D`: the `j`-image is decided exactly in `MD`, the
/// classical-validity half according to `mode`.
pub fn in_ld(f: &FoFormula, mode: L2Mode) -> Result<EntailVerdict, MatrixError> {
    let skeleton = matrix_verdict(Builtin::MD, translate_j(f), DEFAULT_ATOM_CAP)?;
    if !skeleton.holds() {
        return Ok(skeleton);
    }
    let refuted = |structure| EntailVerdict::Fails {
        reason: FailReason::L2Refuted { structure },
        evidence: Evidence::Exact,
    };
    Ok(match mode {
        L2Mode::Assume => EntailVerdict::Holds {
            evidence: Evidence::L2Assumed,
        },
        L2Mode::SkeletonNecessary => match skeleton_refutation(f)? {
            Some(s) => refuted(s),
            None => EntailVerdict::Holds {
                evidence: Evidence::L2Unknown {
                    note: "propositional skeleton is classically valid".into(),
                },
            },
        },
        L2Mode::BoundedRefute { max_domain } => {
            match search_countermodel(f, max_domain, DEFAULT_SEARCH_BUDGET) {
                SearchOutcome::Found(s) => refuted(s),
                SearchOutcome::Exhausted => EntailVerdict::Holds {
                    evidence: Evidence::L2Unknown {
                        note: format!("no countermodel with at most {max_domain} elements"),
                    },
                },
                SearchOutcome::BudgetExceeded { domain } => EntailVerdict::Holds {
                    evidence: Evidence::L2Unknown {
                        note: format!("countermodel search budget exhausted at {domain} elements"),
                    },
                },
            }
        }
    })
}

/// First-order atomic entailment over `⟨R₀₊, L_D⟩`: membership of
/// `∧φ → ψ` in `L_D`.
pub fn atomic_entails_fo(
    phi: &FoFormula,
    psi: &FoFormula,
    mode: L2Mode,
) -> Result<EntailVerdict, MatrixError> {
    in_ld(&FoFormula::imp(phi.universal_closure(), psi.clone()), mode)
}

/// Outcome of the direct definition on one sampled substitution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleRecord {
    pub substitution: PropSubstitution,
    /// Condition (1) holds for this substitution.
    pub cond1: bool,
    /// Condition (2) holds for this substitution.
    pub cond2: bool,
    /// False when the sample violates a condition although the verdict is `Holds`.
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<FailReason>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectDefinitionReport {
    pub phi: PropFormula,
    pub psi: PropFormula,
    pub verdict: EntailVerdict,
    pub samples: Vec<SampleRecord>,
}

impl DirectDefinitionReport {
    /// No sample contradicts the verdict.
    pub fn consistent(&self) -> bool {
        self.samples.iter().all(|s| s.agree)
    }

    pub fn violations(&self) -> impl Iterator<Item = &SampleRecord> {
        self.samples.iter().filter(|s| !(s.cond1 && s.cond2))
    }

    /// A `Fails` verdict read off the first violating sample, if any.
    pub fn refutation(&self) -> Option<EntailVerdict> {
        self.samples.iter().find_map(|s| {
            s.violation.clone().map(|reason| EntailVerdict::Fails {
                reason,
                evidence: Evidence::Sampled,
            })
        })
    }
}

/// One side of a condition: `premise ∈ T_D ⇒ (target ∈ T_D and atoms(small) ⊆ atoms(large))`.
fn condition(
    md: &LogicalMatrix,
    e: &PropSubstitution,
    premise: &PropFormula,
    target: &PropFormula,
    small: &PropFormula,
    large: &PropFormula,
) -> Result<Option<FailReason>, MatrixError> {
    if !validity(md, premise)?.is_valid() {
        return Ok(None);
    }
    if let Verdict::Counterexample { valuation, value } = validity(md, target)? {
        return Ok(Some(FailReason::NotValidInMatrix {
            matrix: md.name().to_string(),
            formula: target.clone(),
            witness: valuation,
            value,
        }));
    }
    let large_atoms = large.atoms();
    let offending: BTreeSet<PropVar> = small
        .atoms()
        .into_iter()
        .filter(|a| !large_atoms.contains(a))
        .collect();
    Ok(
        (!offending.is_empty()).then(|| FailReason::AtomInclusionFails {
            substitution: e.clone(),
            offending,
        }),
    )
}

/// Checks the two substitution conditions of the direct definition of atomic
/// entailment on each sample, against the verdict of [`atomic_entails_prop`].
pub fn direct_definition_check(
    phi: &PropFormula,
    psi: &PropFormula,
    samples: &[PropSubstitution],
) -> Result<DirectDefinitionReport, MatrixError> {
    let md = LogicalMatrix::builtin(Builtin::MD);
    let verdict = atomic_entails_prop(phi, psi)?;
    let (phi_s, psi_s) = (phi.star(), psi.star());
    let dual = PropFormula::imp(
        PropFormula::imp(psi_s.clone(), phi_s.clone()),
        phi_s.clone(),
    );
    let mut records = Vec::with_capacity(samples.len());
    for e in samples {
        let (hphi, hpsi) = (subst_prop(e, phi), subst_prop(e, psi));
        let first = condition(&md, e, &hphi, &hpsi, &hphi, &hpsi)?;
        let (hphi_s, hpsi_s) = (subst_prop(e, &phi_s), subst_prop(e, &psi_s));
        let second = condition(&md, e, &subst_prop(e, &dual), &hphi_s, &hpsi_s, &hphi_s)?;
        let (cond1, cond2) = (first.is_none(), second.is_none());
        records.push(SampleRecord {
            substitution: e.clone(),
            cond1,
            cond2,
            agree: !(verdict.holds() && !(cond1 && cond2)),
            violation: first.or(second),
        });
    }
    Ok(DirectDefinitionReport {
        phi: phi.clone(),
        psi: psi.clone(),
        verdict,
        samples: records,
    })
}

/// Atom pool for sampled substitution images.
pub const SAMPLE_POOL: [PropVar; 4] = [
    PropVar::bare(Letter::P),
    PropVar::bare(Letter::Q),
    PropVar::bare(Letter::S),
    PropVar::bare(Letter::T),
];

/// `count` seeded substitutions for `atoms`. Images are drawn from small
/// formulas over [`SAMPLE_POOL`], with a bias towards `MD`-valid ones
/// (`a -> a`) so that the conditions' antecedents are often met.
pub fn sample_substitutions(
    atoms: &BTreeSet<PropVar>,
    count: usize,
    seed: u64,
) -> Vec<PropSubstitution> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let map: BTreeMap<PropVar, PropFormula> = atoms
                .iter()
                .map(|a| {
                    let image = match rng.gen_range(0..10) {
                        0 | 1 => PropFormula::Atom(*a),
                        2 | 3 => PropFormula::Atom(SAMPLE_POOL[rng.gen_range(0..4)]),
                        4..=6 => {
                            let b = random_prop(&mut rng, &SAMPLE_POOL, 1);
                            PropFormula::imp(b.clone(), b)
                        }
                        _ => random_prop(&mut rng, &SAMPLE_POOL, 2),
                    };
                    (*a, image)
                })
                .collect();
            PropSubstitution(map)
        })
        .collect()
}
