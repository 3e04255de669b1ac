//! Quantifier-erasing translations into propositional skeletons, and the
//! substitution endomorphisms for propositional variables and simple formulas.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::syntax::{ArithFormula, ArithRel, FoFormula, Formula, PredAtom, PropFormula, PropVar};

/// Target atom of every equality under `i`.
pub const EQ_ATOM: PropVar = PropVar::p(1);
/// Target atom of every `<` under `i`.
pub const LT_ATOM: PropVar = PropVar::p(2);

fn erase<A>(f: &Formula<A>, leaf: &impl Fn(&A) -> PropVar) -> PropFormula {
    match f {
        Formula::Atom(a) => PropFormula::Atom(leaf(a)),
        Formula::Neg(a) => PropFormula::neg(erase(a, leaf)),
        Formula::Bin(c, a, b) => PropFormula::bin(*c, erase(a, leaf), erase(b, leaf)),
        Formula::Quant(_, _, body) => erase(body, leaf),
    }
}

/// Predicate indices used with more than one arity in `f`.
pub fn mixed_arity_indices(f: &FoFormula) -> BTreeSet<u32> {
    let mut arities: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    for letter in f.predicate_letters() {
        arities
            .entry(letter.index)
            .or_default()
            .insert(letter.arity);
    }
    arities
        .into_iter()
        .filter(|(_, a)| a.len() > 1)
        .map(|(i, _)| i)
        .collect()
}

/// `j`: every simple formula with predicate index `k` becomes `p<k>`,
/// whatever its arity and arguments; quantifiers are dropped.
pub fn translate_j(f: &FoFormula) -> PropFormula {
    let mixed = mixed_arity_indices(f);
    if !mixed.is_empty() {
        log::warn!(
            "predicate indices {mixed:?} occur with several arities and collapse onto one variable"
        );
    }
    erase(f, &|a: &PredAtom| PropVar::p(a.index))
}

/// `i`: equalities become `p1`, inequalities `p2`; quantifiers are dropped.
pub fn translate_i(f: &ArithFormula) -> PropFormula {
    erase(f, &|a: &crate::syntax::ArithAtom| match a.rel {
        ArithRel::Eq => EQ_ATOM,
        ArithRel::Lt => LT_ATOM,
    })
}

/// A simultaneous substitution of formulas for propositional variables.
/// Variables outside the map are left in place.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PropSubstitution(pub BTreeMap<PropVar, PropFormula>);

impl PropSubstitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: PropVar, f: PropFormula) -> Self {
        self.0.insert(v, f);
        self
    }

    pub fn image(&self, v: &PropVar) -> PropFormula {
        self.0.get(v).cloned().unwrap_or(PropFormula::Atom(*v))
    }

    /// `self ∘ first`: the substitution acting like `first` followed by `self`.
    pub fn after(&self, first: &PropSubstitution) -> PropSubstitution {
        let mut out: BTreeMap<PropVar, PropFormula> = first
            .0
            .iter()
            .map(|(v, f)| (*v, subst_prop(self, f)))
            .collect();
        for (v, f) in &self.0 {
            out.entry(*v).or_insert_with(|| f.clone());
        }
        PropSubstitution(out)
    }
}

impl std::fmt::Display for PropSubstitution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&serde_json::to_string(self).map_err(|_| std::fmt::Error)?)
    }
}

/// `hᵉ` on propositional formulas.
pub fn subst_prop(e: &PropSubstitution, f: &PropFormula) -> PropFormula {
    match f {
        PropFormula::Atom(v) => e.image(v),
        PropFormula::Neg(a) => PropFormula::neg(subst_prop(e, a)),
        PropFormula::Bin(c, a, b) => PropFormula::bin(*c, subst_prop(e, a), subst_prop(e, b)),
    }
}

/// A substitution of formulas for simple formulas, keyed by the whole
/// simple formula (letter together with its argument terms).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PredSubstitution(pub BTreeMap<PredAtom, FoFormula>);

impl PredSubstitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, atom: PredAtom, f: FoFormula) -> Self {
        self.0.insert(atom, f);
        self
    }
}

impl Serialize for PredSubstitution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(k, v)| (k.to_string(), v.to_string())))
    }
}

impl<'de> Deserialize<'de> for PredSubstitution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        let mut out = BTreeMap::new();
        for (k, v) in raw {
            let key = match crate::syntax::parse_fo(&k).map_err(D::Error::custom)? {
                Formula::Atom(a) => a,
                other => return Err(D::Error::custom(format!("{other} is not a simple formula"))),
            };
            out.insert(key, crate::syntax::parse_fo(&v).map_err(D::Error::custom)?);
        }
        Ok(PredSubstitution(out))
    }
}

/// `hᵉ` on first-order formulas. Applied literally: no capture or
/// argument-coherence checks, quantifiers kept in place.
pub fn subst_pred(e: &PredSubstitution, f: &FoFormula) -> FoFormula {
    match f {
        Formula::Atom(a) => e.0.get(a).cloned().unwrap_or_else(|| f.clone()),
        Formula::Neg(a) => Formula::neg(subst_pred(e, a)),
        Formula::Bin(c, a, b) => Formula::bin(*c, subst_pred(e, a), subst_pred(e, b)),
        Formula::Quant(q, x, body) => Formula::Quant(*q, *x, Box::new(subst_pred(e, body))),
    }
}

/// Checks `P₀(hᵉ(φ)) = ⋃_{p ∈ P₀(φ)} P₀(e(p))`.
pub fn atoms_image_law(e: &PropSubstitution, f: &PropFormula) -> bool {
    let expected: BTreeSet<PropVar> = f.atoms().iter().flat_map(|p| e.image(p).atoms()).collect();
    subst_prop(e, f).atoms() == expected
}
