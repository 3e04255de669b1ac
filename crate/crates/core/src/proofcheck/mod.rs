//! Hilbert-style derivations and their checker.
//!
//! A derivation is a numbered list of formulas of one sort, each justified as
//! an axiom (admitted by a named [`AxiomOracle`] or listed among the
//! derivation's premises) or by a rule applied to earlier steps.

mod oracles;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{AnyFormula, SortKind};
use crate::translate::{subst_prop, PropSubstitution};

pub use oracles::{L2rOracle, LdOracle, LdrOracle, MatrixOracle, Oracles, XpOracle, YpOracle};

/// Justification name for formulas taken from the derivation's premise list.
pub const PREMISE: &str = "premise";

/// An axiom-membership test that explains its decisions.
pub trait AxiomOracle: Send + Sync {
    fn name(&self) -> &str;

    /// Evidence for membership, or the reason for refusing.
    fn admit(&self, f: &AnyFormula) -> Result<String, String>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Axiom(String),
    /// `MP(i, j)`: step `j` is `step i → current`.
    Mp(usize, usize),
    /// `Gen(i, x)`: current is `∀x step i`.
    Gen(usize, u32),
    /// `Subst(i, e)`: current is `hᵉ(step i)`.
    Subst(usize, PropSubstitution),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(name) => write!(f, "axiom:{name}"),
            Justification::Mp(i, j) => write!(f, "mp:{i},{j}"),
            Justification::Gen(i, x) => write!(f, "gen:{i},x{x}"),
            Justification::Subst(i, e) => write!(f, "subst:{i},{e}"),
        }
    }
}

impl std::str::FromStr for Justification {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| format!("justification {s:?} lacks a kind"))?;
        let index = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad step index {t:?}"))
        };
        match kind {
            "axiom" if !rest.is_empty() => Ok(Justification::Axiom(rest.to_string())),
            "mp" => {
                let (i, j) = rest.split_once(',').ok_or("mp needs two indices")?;
                Ok(Justification::Mp(index(i)?, index(j)?))
            }
            "gen" => {
                let (i, x) = rest
                    .split_once(',')
                    .ok_or("gen needs an index and a variable")?;
                let x = crate::syntax::parse_variable(x.trim()).map_err(|e| e.to_string())?;
                Ok(Justification::Gen(index(i)?, x))
            }
            "subst" => {
                let (i, map) = rest
                    .split_once(',')
                    .ok_or("subst needs an index and a map")?;
                let e: PropSubstitution = serde_json::from_str(map).map_err(|e| e.to_string())?;
                Ok(Justification::Subst(index(i)?, e))
            }
            _ => Err(format!("unknown justification {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub index: usize,
    pub formula: AnyFormula,
    pub just: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub sort: SortKind,
    pub premises: Vec<AnyFormula>,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

#[derive(Serialize, Deserialize)]
struct Header {
    sort: SortKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    premises: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct StepRecord {
    i: usize,
    formula: String,
    just: String,
}

impl Derivation {
    pub fn new(sort: SortKind) -> Self {
        Derivation {
            sort,
            premises: Vec::new(),
            steps: Vec::new(),
        }
    }

    pub fn with_premise(mut self, f: impl Into<AnyFormula>) -> Self {
        self.premises.push(f.into());
        self
    }

    /// Appends a step and returns its 1-based index.
    pub fn push(&mut self, formula: impl Into<AnyFormula>, just: Justification) -> usize {
        let index = self.steps.len() + 1;
        self.steps.push(Step {
            index,
            formula: formula.into(),
            just,
        });
        index
    }

    pub fn last(&self) -> Option<&AnyFormula> {
        self.steps.last().map(|s| &s.formula)
    }

    /// One header record, then one record per step.
    pub fn to_jsonl(&self) -> String {
        let header = Header {
            sort: self.sort,
            premises: self.premises.iter().map(|p| p.to_string()).collect(),
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for s in &self.steps {
            let rec = StepRecord {
                i: s.index,
                formula: s.formula.to_string(),
                just: s.just.to_string(),
            };
            out.push_str(&serde_json::to_string(&rec).expect("step serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, FormatError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let err = |line: usize, message: String| FormatError {
            line: line + 1,
            message,
        };
        let (n, first) = lines
            .next()
            .ok_or_else(|| err(0, "missing header record".into()))?;
        let header: Header = serde_json::from_str(first).map_err(|e| err(n, e.to_string()))?;
        let mut d = Derivation::new(header.sort);
        for p in &header.premises {
            d.premises.push(
                header
                    .sort
                    .parse_formula(p)
                    .map_err(|e| err(n, format!("premise {p:?}: {e}")))?,
            );
        }
        for (n, line) in lines {
            let rec: StepRecord = serde_json::from_str(line).map_err(|e| err(n, e.to_string()))?;
            if rec.i != d.steps.len() + 1 {
                return Err(err(
                    n,
                    format!(
                        "step numbered {} where {} was expected",
                        rec.i,
                        d.steps.len() + 1
                    ),
                ));
            }
            let formula = header
                .sort
                .parse_formula(&rec.formula)
                .map_err(|e| err(n, e.to_string()))?;
            let just = rec.just.parse().map_err(|e| err(n, e))?;
            d.push(formula, just);
        }
        Ok(d)
    }
}

/// Which inference rules a check admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleSet {
    pub mp: bool,
    pub gen: bool,
    pub subst: bool,
}

impl RuleSet {
    /// Modus ponens and generalization, for the first-order and arithmetic sorts.
    pub const R0P_PLUS: RuleSet = RuleSet {
        mp: true,
        gen: true,
        subst: false,
    };
    /// Modus ponens and propositional substitution.
    pub const R0_STAR: RuleSet = RuleSet {
        mp: true,
        gen: false,
        subst: true,
    };
    pub const MP_ONLY: RuleSet = RuleSet {
        mp: true,
        gen: false,
        subst: false,
    };
    pub const GEN_ONLY: RuleSet = RuleSet {
        mp: false,
        gen: true,
        subst: false,
    };

    /// The customary rule set of a sort.
    pub fn for_sort(sort: SortKind) -> Self {
        match sort {
            SortKind::Prop => RuleSet::R0_STAR,
            SortKind::Fo | SortKind::Arith => RuleSet::R0P_PLUS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Error)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum StepFailure {
    #[error("oracle {oracle} rejects the formula: {detail}")]
    OracleReject { oracle: String, detail: String },
    #[error("modus ponens does not match: {detail}")]
    MpMismatch { detail: String },
    #[error("generalization does not match: {detail}")]
    GenMismatch { detail: String },
    #[error("substitution does not match: {detail}")]
    SubstMismatch { detail: String },
    #[error("step {target} is not strictly earlier")]
    ForwardReference { target: usize },
    #[error("rule {rule} is not in the rule set")]
    RuleNotInSet { rule: &'static str },
    #[error("formula is of sort {found}, derivation is of sort {expected}")]
    SortMismatch { expected: SortKind, found: SortKind },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Error)]
#[error("step {index}: {reason}")]
pub struct StepError {
    pub index: usize,
    pub reason: StepFailure,
}

/// What justified each step of an accepted derivation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepEvidence {
    pub index: usize,
    pub just: String,
    pub detail: String,
}

fn earlier(d: &Derivation, current: usize, target: usize) -> Result<&AnyFormula, StepFailure> {
    if target == 0 || target >= current {
        return Err(StepFailure::ForwardReference { target });
    }
    Ok(&d.steps[target - 1].formula)
}

fn check_step(
    d: &Derivation,
    step: &Step,
    oracles: &Oracles,
    rules: RuleSet,
) -> Result<String, StepFailure> {
    let here = step.index;
    let current = &step.formula;
    if current.sort() != d.sort {
        return Err(StepFailure::SortMismatch {
            expected: d.sort,
            found: current.sort(),
        });
    }
    match &step.just {
        Justification::Axiom(name) if name == PREMISE => {
            if d.premises.contains(current) {
                Ok("listed premise".into())
            } else {
                Err(StepFailure::OracleReject {
                    oracle: PREMISE.into(),
                    detail: "not among the premises".into(),
                })
            }
        }
        Justification::Axiom(name) => {
            let oracle = oracles.get(name).ok_or_else(|| StepFailure::OracleReject {
                oracle: name.clone(),
                detail: "no oracle of that name is in use".into(),
            })?;
            oracle
                .admit(current)
                .map_err(|detail| StepFailure::OracleReject {
                    oracle: name.clone(),
                    detail,
                })
        }
        Justification::Mp(i, j) => {
            if !rules.mp {
                return Err(StepFailure::RuleNotInSet { rule: "mp" });
            }
            let (minor, major) = (earlier(d, here, *i)?, earlier(d, here, *j)?);
            let Some((ante, cons)) = major.as_impl() else {
                return Err(StepFailure::MpMismatch {
                    detail: format!("step {j} is not an implication"),
                });
            };
            if &ante != minor {
                return Err(StepFailure::MpMismatch {
                    detail: format!("antecedent of step {j} differs from step {i}"),
                });
            }
            if &cons != current {
                return Err(StepFailure::MpMismatch {
                    detail: format!("consequent of step {j} differs from this step"),
                });
            }
            Ok(format!("modus ponens on steps {i} and {j}"))
        }
        Justification::Gen(i, x) => {
            if !rules.gen {
                return Err(StepFailure::RuleNotInSet { rule: "gen" });
            }
            let premise = earlier(d, here, *i)?;
            match premise.generalize(*x) {
                Some(g) if &g == current => Ok(format!("generalization of step {i} on x{x}")),
                Some(_) => Err(StepFailure::GenMismatch {
                    detail: format!("this step is not (all x{x} step {i})"),
                }),
                None => Err(StepFailure::GenMismatch {
                    detail: "propositional formulas have no quantifiers".into(),
                }),
            }
        }
        Justification::Subst(i, e) => {
            if !rules.subst {
                return Err(StepFailure::RuleNotInSet { rule: "subst" });
            }
            match earlier(d, here, *i)? {
                AnyFormula::Prop(p) if AnyFormula::Prop(subst_prop(e, p)) == *current => {
                    Ok(format!("substitution {e} in step {i}"))
                }
                AnyFormula::Prop(_) => Err(StepFailure::SubstMismatch {
                    detail: format!("this step is not step {i} under {e}"),
                }),
                _ => Err(StepFailure::SubstMismatch {
                    detail: "substitution applies to propositional formulas".into(),
                }),
            }
        }
    }
}

/// Checks every step of `d`; on success returns what justified each step.
pub fn check(
    d: &Derivation,
    oracles: &Oracles,
    rules: RuleSet,
) -> Result<Vec<StepEvidence>, StepError> {
    d.steps
        .iter()
        .map(|step| {
            check_step(d, step, oracles, rules)
                .map(|detail| StepEvidence {
                    index: step.index,
                    just: step.just.to_string(),
                    detail,
                })
                .map_err(|reason| StepError {
                    index: step.index,
                    reason,
                })
        })
        .collect()
}

/// Bounds for [`closure_probe`].
#[derive(Debug, Clone)]
pub struct ProbeConfig {
    /// Rounds of rule application.
    pub depth: usize,
    /// Variables generalization may bind.
    pub gen_vars: Vec<u32>,
    /// Substitutions the substitution rule may apply.
    pub substitutions: Vec<PropSubstitution>,
    /// Largest number of formulas the probe may hold.
    pub budget: usize,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            depth: 1,
            gen_vars: vec![1],
            substitutions: Vec::new(),
            budget: 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbeError {
    #[error("closure exceeded the budget of {budget} formulas")]
    Budget { budget: usize },
    #[error("seed {formula} is of sort {found}, expected {expected}")]
    SortMismatch {
        formula: String,
        expected: SortKind,
        found: SortKind,
    },
}

#[derive(Debug, Clone)]
enum Origin {
    Axiom(String),
    Mp(usize, usize),
    Gen(usize, u32),
    Subst(usize, PropSubstitution),
}

/// Formulas reached by a bounded forward closure, each with its derivation.
#[derive(Debug, Clone)]
pub struct ProbeResult {
    pub sort: SortKind,
    pub formulas: Vec<AnyFormula>,
    pub seeds: usize,
    premises: Vec<AnyFormula>,
    origins: Vec<Origin>,
}

impl ProbeResult {
    pub fn contains(&self, f: &AnyFormula) -> bool {
        self.formulas.contains(f)
    }

    /// Formulas added beyond the seeds.
    pub fn derived(&self) -> &[AnyFormula] {
        &self.formulas[self.seeds..]
    }

    /// A derivation ending in formula number `k` of [`Self::formulas`].
    pub fn derivation(&self, k: usize) -> Derivation {
        let mut d = Derivation::new(self.sort);
        d.premises = self.premises.clone();
        let mut placed: HashMap<usize, usize> = HashMap::new();
        self.place(k, &mut d, &mut placed);
        d
    }

    fn place(&self, k: usize, d: &mut Derivation, placed: &mut HashMap<usize, usize>) -> usize {
        if let Some(&i) = placed.get(&k) {
            return i;
        }
        let just = match &self.origins[k] {
            Origin::Axiom(name) => Justification::Axiom(name.clone()),
            Origin::Mp(a, b) => {
                let (a, b) = (self.place(*a, d, placed), self.place(*b, d, placed));
                Justification::Mp(a, b)
            }
            Origin::Gen(a, x) => Justification::Gen(self.place(*a, d, placed), *x),
            Origin::Subst(a, e) => Justification::Subst(self.place(*a, d, placed), e.clone()),
        };
        let i = d.push(self.formulas[k].clone(), just);
        placed.insert(k, i);
        i
    }
}

/// Every formula obtainable from `seeds` by at most `config.depth` rounds of
/// rule application, deduplicated syntactically. Seeds admitted by an oracle
/// are justified by it; the rest enter derivations as premises.
pub fn closure_probe(
    seeds: &[AnyFormula],
    oracles: &Oracles,
    rules: RuleSet,
    config: &ProbeConfig,
) -> Result<ProbeResult, ProbeError> {
    let sort = seeds
        .first()
        .map(AnyFormula::sort)
        .unwrap_or(SortKind::Prop);
    let mut result = ProbeResult {
        sort,
        formulas: Vec::new(),
        seeds: 0,
        premises: Vec::new(),
        origins: Vec::new(),
    };
    let mut index: BTreeMap<AnyFormula, usize> = BTreeMap::new();
    let add = |f: AnyFormula,
               origin: Origin,
               result: &mut ProbeResult,
               index: &mut BTreeMap<AnyFormula, usize>| {
        if index.contains_key(&f) {
            return Ok(());
        }
        if result.formulas.len() >= config.budget {
            return Err(ProbeError::Budget {
                budget: config.budget,
            });
        }
        index.insert(f.clone(), result.formulas.len());
        result.formulas.push(f);
        result.origins.push(origin);
        Ok(())
    };
    for s in seeds {
        if s.sort() != sort {
            return Err(ProbeError::SortMismatch {
                formula: s.to_string(),
                expected: sort,
                found: s.sort(),
            });
        }
        let name = oracles
            .iter()
            .find(|o| o.admit(s).is_ok())
            .map(|o| o.name().to_string());
        let name = name.unwrap_or_else(|| {
            result.premises.push(s.clone());
            PREMISE.to_string()
        });
        add(s.clone(), Origin::Axiom(name), &mut result, &mut index)?;
    }
    result.seeds = result.formulas.len();
    for _ in 0..config.depth {
        let known = result.formulas.len();
        let mut fresh = Vec::new();
        for b in 0..known {
            if rules.mp {
                if let Some((ante, cons)) = result.formulas[b].as_impl() {
                    if let Some(&a) = index.get(&ante) {
                        fresh.push((cons, Origin::Mp(a, b)));
                    }
                }
            }
            if rules.gen {
                for &x in &config.gen_vars {
                    if let Some(g) = result.formulas[b].generalize(x) {
                        fresh.push((g, Origin::Gen(b, x)));
                    }
                }
            }
            if rules.subst {
                if let AnyFormula::Prop(p) = &result.formulas[b] {
                    for e in &config.substitutions {
                        fresh.push((
                            AnyFormula::Prop(subst_prop(e, p)),
                            Origin::Subst(b, e.clone()),
                        ));
                    }
                }
            }
        }
        for (f, origin) in fresh {
            add(f, origin, &mut result, &mut index)?;
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_prop, Letter, PropVar};

    fn prop(s: &str) -> AnyFormula {
        AnyFormula::Prop(parse_prop(s).unwrap())
    }

    #[test]
    fn propositional_substitution_derivation() {
        let mut d = Derivation::new(SortKind::Prop);
        d.push(prop("p -> p"), Justification::Axiom("td".into()));
        let e =
            PropSubstitution::new().with(PropVar::bare(Letter::P), parse_prop("q & q").unwrap());
        d.push(prop("q & q -> q & q"), Justification::Subst(1, e));
        let ev = check(&d, &Oracles::standard(), RuleSet::R0_STAR).unwrap();
        assert_eq!(ev.len(), 2);
        assert_eq!(
            check(&d, &Oracles::standard(), RuleSet::R0P_PLUS)
                .unwrap_err()
                .reason,
            StepFailure::RuleNotInSet { rule: "subst" }
        );
    }

    #[test]
    fn mp_mismatch_is_reported() {
        let mut d = Derivation::new(SortKind::Prop)
            .with_premise(prop("p"))
            .with_premise(prop("q"));
        d.push(prop("p"), Justification::Axiom(PREMISE.into()));
        d.push(prop("q"), Justification::Axiom(PREMISE.into()));
        d.push(prop("q"), Justification::Mp(1, 2));
        let err = check(&d, &Oracles::standard(), RuleSet::R0_STAR).unwrap_err();
        assert_eq!(err.index, 3);
        assert!(matches!(err.reason, StepFailure::MpMismatch { .. }));
    }

    #[test]
    fn forward_references_and_unknown_oracles() {
        let mut d = Derivation::new(SortKind::Prop);
        d.push(prop("p -> p"), Justification::Mp(1, 2));
        let err = check(&d, &Oracles::standard(), RuleSet::R0_STAR).unwrap_err();
        assert_eq!(err.reason, StepFailure::ForwardReference { target: 1 });
        let mut d = Derivation::new(SortKind::Prop);
        d.push(prop("p -> p"), Justification::Axiom("nope".into()));
        assert!(matches!(
            check(&d, &Oracles::standard(), RuleSet::R0_STAR)
                .unwrap_err()
                .reason,
            StepFailure::OracleReject { .. }
        ));
    }

    #[test]
    fn jsonl_round_trip() {
        let mut d = Derivation::new(SortKind::Prop).with_premise(prop("p"));
        d.push(prop("p"), Justification::Axiom(PREMISE.into()));
        d.push(prop("p -> p | p"), Justification::Axiom("td".into()));
        d.push(prop("p | p"), Justification::Mp(1, 2));
        let e =
            PropSubstitution::new().with(PropVar::bare(Letter::P), parse_prop("q & q").unwrap());
        d.push(prop("q & q | q & q"), Justification::Subst(3, e));
        let text = d.to_jsonl();
        assert!(text.starts_with(r#"{"sort":"prop","premises":["p"]}"#));
        assert!(text.contains(r#""just":"subst:3,{\"p\":\"q & q\"}""#));
        assert_eq!(Derivation::from_jsonl(&text).unwrap(), d);
        let bad = text.replace(r#""i":2"#, r#""i":5"#);
        assert_eq!(Derivation::from_jsonl(&bad).unwrap_err().line, 3);
    }

    #[test]
    fn probe_adds_mp_consequences() {
        let seeds = [prop("p"), prop("p -> q")];
        let cfg = ProbeConfig {
            depth: 1,
            ..ProbeConfig::default()
        };
        let r = closure_probe(&seeds, &Oracles::standard(), RuleSet::MP_ONLY, &cfg).unwrap();
        assert_eq!(r.derived(), &[prop("q")]);
        let d = r.derivation(2);
        assert!(check(&d, &Oracles::standard(), RuleSet::MP_ONLY).is_ok());
    }

    #[test]
    fn probe_budget_guard() {
        let seeds = [prop("p")];
        let e =
            PropSubstitution::new().with(PropVar::bare(Letter::P), parse_prop("p & p").unwrap());
        let cfg = ProbeConfig {
            depth: 10,
            substitutions: vec![e],
            budget: 5,
            ..ProbeConfig::default()
        };
        let err = closure_probe(&seeds, &Oracles::standard(), RuleSet::R0_STAR, &cfg).unwrap_err();
        assert_eq!(err, ProbeError::Budget { budget: 5 });
    }
}
