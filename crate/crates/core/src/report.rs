//! One-shot reproduction of the desk-scale claims, each checked against the
//! library with fixed bounds and a seed.

use std::collections::HashSet;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arithmetic::{
    bridge_derivation, classification_record, classify_axiom, generate_logical_axioms,
    one_atom_lemma_check, specific_axiom, AxiomClass, SchemaKind, SchemaSpec, Via,
};
use crate::entailment::{direct_definition_check, sample_substitutions};
use crate::gen::{
    enumerate_prop, random_arith, random_arith_term, random_fo, random_fo_term, random_prop,
    QuantShape,
};
use crate::matrix::{
    eval, expand_defined, fo_eval_finite, search_countermodel, table_dump, validity, valuations,
    Assignment, Builtin, LogicalMatrix, SearchOutcome, Verdict,
};
use crate::proofcheck::{check, Oracles, RuleSet};
use crate::syntax::{Formula, PropFormula, PropVar};
use crate::translate::{translate_i, translate_j};

pub const TABLE_MD_GOLDEN: &str = include_str!("../golden/table_md.txt");
/// Tab-separated `psi<k>` and rendered axiom, one per line.
pub const AXIOMS_GOLDEN: &str = include_str!("../golden/axioms.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClaimRecord {
    pub claim_id: &'static str,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub evidence: Vec<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportOutcome {
    pub seed: u64,
    pub claims: Vec<ClaimRecord>,
}

impl ReportOutcome {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status == Status::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ReportConfig {
    pub seed: u64,
    /// Where to write evidence files; nothing is written when `None`.
    pub evidence_dir: Option<PathBuf>,
}

struct Claim {
    id: &'static str,
    failures: Vec<String>,
    summary: String,
    evidence: Vec<PathBuf>,
}

impl Claim {
    fn new(id: &'static str) -> Self {
        Claim {
            id,
            failures: Vec::new(),
            summary: String::new(),
            evidence: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self) -> ClaimRecord {
        let status = if self.failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        let mut detail = self.summary;
        if let Some(first) = self.failures.first() {
            detail = format!(
                "{detail}; {} failure(s), first: {first}",
                self.failures.len()
            );
        }
        ClaimRecord {
            claim_id: self.id,
            status,
            detail,
            evidence: self.evidence,
        }
    }
}

struct Evidence<'a>(Option<&'a Path>);

impl Evidence<'_> {
    fn write(&self, claim: &mut Claim, name: &str, body: &str) -> io::Result<()> {
        if let Some(dir) = self.0 {
            let path = dir.join(name);
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent)?;
            }
            fs::write(&path, body)?;
            claim.evidence.push(path);
        }
        Ok(())
    }
}

fn md() -> LogicalMatrix {
    LogicalMatrix::builtin(Builtin::MD)
}

fn m2() -> LogicalMatrix {
    LogicalMatrix::builtin(Builtin::M2)
}

fn is_valid(m: &LogicalMatrix, f: &PropFormula) -> bool {
    validity(m, f).is_ok_and(|v| v.is_valid())
}

fn table_fidelity(ev: &Evidence) -> io::Result<ClaimRecord> {
    let mut c = Claim::new("table-fidelity");
    let dump = table_dump(&md());
    c.summary = "MD tables against the transcribed golden".into();
    c.require(dump == TABLE_MD_GOLDEN, || {
        "table dump differs from golden".into()
    });
    ev.write(&mut c, "table_md.txt", &dump)?;
    Ok(c.finish())
}

fn two_atom_corpus() -> Vec<PropFormula> {
    enumerate_prop(&[PropVar::p(1), PropVar::p(2)], 4)
}

fn reduct_coherence(corpus: &[PropFormula]) -> ClaimRecord {
    let mut c = Claim::new("reduct-coherence");
    let (md, mdp) = (md(), LogicalMatrix::builtin(Builtin::MDPrime));
    let mut checks = 0usize;
    for f in corpus {
        let reduced = expand_defined(f);
        for v in valuations(&f.atoms(), 3) {
            checks += 1;
            let (a, b) = (eval(&md, f, &v), eval(&mdp, &reduced, &v));
            c.require(a.is_ok() && a == b, || {
                format!("{f} at {v}: {a:?} vs {b:?}")
            });
        }
    }
    c.summary = format!(
        "{} formulas with at most 4 connectives over 2 atoms, {checks} evaluations",
        corpus.len()
    );
    c.finish()
}

fn td_in_z2(corpus: &[PropFormula]) -> ClaimRecord {
    let mut c = Claim::new("td-in-z2-mp-closure");
    let (md, m2) = (md(), m2());
    let valid: HashSet<&PropFormula> = corpus.iter().filter(|f| is_valid(&md, f)).collect();
    for f in &valid {
        c.require(is_valid(&m2, f), || {
            format!("{f} is MD-valid but not M2-valid")
        });
    }
    let mut pairs = 0usize;
    for f in &valid {
        if let Some((a, b)) = f.as_impl() {
            if valid.contains(a) {
                pairs += 1;
                c.require(is_valid(&md, b), || {
                    format!("MP from {a} and {f} leaves T_D")
                });
            }
        }
    }
    c.summary = format!(
        "{} MD-valid formulas, {pairs} modus ponens pairs",
        valid.len()
    );
    c.finish()
}

fn one_atom(axioms: &[crate::arithmetic::CertifiedAxiom]) -> ClaimRecord {
    let mut c = Claim::new("one-atom-lemma");
    let (md, m2) = (md(), m2());
    let corpus = enumerate_prop(&[PropVar::p(1)], 5);
    for f in &corpus {
        let (a, b) = (is_valid(&md, f), is_valid(&m2, f));
        c.require(a == b, || format!("{f}: MD {a}, M2 {b}"));
    }
    match one_atom_lemma_check(axioms.iter().map(|a| &a.formula)) {
        Ok(r) => {
            c.require(r.passed(), || {
                format!("corpus violations: {:?}", r.violations)
            });
            c.summary = format!(
                "{} one-atom formulas with at most 5 connectives; {} single-predicate corpus members",
                corpus.len(),
                r.only_eq + r.only_lt
            );
        }
        Err(e) => c.require(false, || e.to_string()),
    }
    c.finish()
}

fn named_verdicts() -> ClaimRecord {
    let mut c = Claim::new("named-verdicts");
    let cases: [(&str, Option<&str>); 5] = [
        ("p -> p", None),
        ("p | ~p", None),
        ("p & q -> p", Some("p=2, q=1")),
        ("p -> p | q", Some("p=2, q=0")),
        ("p & q -> p | q", None),
    ];
    let md = md();
    for (text, want) in cases {
        let f: PropFormula = text.parse().expect("fixed formula parses");
        let got = match validity(&md, &f) {
            Ok(Verdict::Valid) => None,
            Ok(Verdict::Counterexample { valuation, .. }) => Some(valuation.to_string()),
            Err(e) => Some(e.to_string()),
        };
        c.require(got.as_deref() == want, || {
            format!("{text}: expected {want:?}, got {got:?}")
        });
    }
    c.summary = "five verdicts and witnesses in MD".into();
    c.finish()
}

fn translation_laws(seed: u64) -> ClaimRecord {
    let mut c = Claim::new("translation-laws");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = QuantShape::default();
    let count = 10_000;
    for _ in 0..count / 2 {
        let f = random_arith(&mut rng, &shape);
        let x = rng.gen_range(1..=shape.vars);
        let img = translate_i(&f);
        c.require(translate_i(&Formula::forall(x, f.clone())) == img, || {
            format!("i(all x{x} {f})")
        });
        c.require(translate_i(&Formula::exists(x, f.clone())) == img, || {
            format!("i(ex x{x} {f})")
        });
        c.require(
            translate_i(&f.star()) == PropFormula::neg(img.clone()),
            || format!("i({f}*)"),
        );
        let t = random_arith_term(&mut rng, shape.vars, shape.term_depth);
        if let Ok(g) = f.substitute(x, &t) {
            c.require(translate_i(&g) == img, || format!("i({f}(x{x}/{t}))"));
        }

        let f = random_fo(&mut rng, &shape);
        let img = translate_j(&f);
        c.require(translate_j(&Formula::forall(x, f.clone())) == img, || {
            format!("j(all x{x} {f})")
        });
        c.require(translate_j(&Formula::exists(x, f.clone())) == img, || {
            format!("j(ex x{x} {f})")
        });
        c.require(
            translate_j(&f.star()) == PropFormula::neg(img.clone()),
            || format!("j({f}*)"),
        );
        let t = random_fo_term(&mut rng, shape.vars, shape.term_depth);
        if let Ok(g) = f.substitute(x, &t) {
            c.require(translate_j(&g) == img, || format!("j({f}(x{x}/{t}))"));
        }
    }
    c.summary = format!("{count} generated formulas, half arithmetic and half first-order");
    c.finish()
}

fn bridges(
    axioms: &[crate::arithmetic::CertifiedAxiom],
    via: Via,
    ev: &Evidence,
) -> io::Result<ClaimRecord> {
    let (id, tag) = match via {
        Via::Psi12 => ("bridge-psi12", "psi12"),
        Via::Psi14 => ("bridge-psi14", "psi14"),
    };
    let mut c = Claim::new(id);
    c.require(axioms.len() >= 500, || {
        format!("only {} corpus members", axioms.len())
    });
    let oracles = Oracles::named(&["xp", "ldr"]).expect("built-in oracles");
    let md = md();
    let mut excluded = 0usize;
    for a in axioms {
        let alpha = &a.formula;
        match classify_axiom(alpha) {
            Ok(AxiomClass::InLdr) => continue,
            Ok(AxiomClass::Excluded { .. }) => excluded += 1,
            Err(e) => {
                c.require(false, || format!("{alpha}: {e}"));
                continue;
            }
        }
        match bridge_derivation(alpha, via) {
            Ok(b) => {
                let checked = check(&b.derivation, &oracles, RuleSet::R0P_PLUS);
                c.require(checked.is_ok(), || format!("{alpha}: {:?}", checked.err()));
                c.require(is_valid(&md, &b.image), || {
                    format!("{alpha}: image {} not MD-valid", b.image)
                });
                ev.write(
                    &mut c,
                    &format!("bridges/{tag}-{excluded:04}.jsonl"),
                    &b.derivation.to_jsonl(),
                )?;
            }
            Err(e) => c.require(false, || format!("{alpha}: {e}")),
        }
    }
    c.require(excluded > 0, || "no excluded member to bridge".into());
    c.summary = format!(
        "{} certified members, {excluded} excluded, each bridged via {tag}",
        axioms.len()
    );
    Ok(c.finish())
}

fn absorption(
    axioms: &[crate::arithmetic::CertifiedAxiom],
    ev: &Evidence,
) -> io::Result<ClaimRecord> {
    let mut c = Claim::new("quantifier-absorption");
    let mut n = 0usize;
    let mut lines = String::new();
    for a in axioms {
        if let Ok(r) = classification_record(&a.formula) {
            lines.push_str(&serde_json::to_string(&r).expect("serializable"));
            lines.push('\n');
        }
        if a.kind == SchemaKind::Skeleton {
            continue;
        }
        n += 1;
        let class = classify_axiom(&a.formula);
        c.require(class == Ok(AxiomClass::InLdr), || {
            format!("{}: {class:?}", a.formula)
        });
    }
    c.require(n > 0, || "no quantifier axioms generated".into());
    c.summary = format!("{n} quantifier axioms classified");
    ev.write(&mut c, "classification.jsonl", &lines)?;
    Ok(c.finish())
}

fn direct_definition(seed: u64, ev: &Evidence) -> io::Result<ClaimRecord> {
    let mut c = Claim::new("direct-definition-harness");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let atoms = [
        PropVar::bare(crate::syntax::Letter::P),
        PropVar::bare(crate::syntax::Letter::Q),
    ];
    let (mut holds, mut refuted) = (0usize, 0usize);
    let mut lines = String::new();
    for k in 0..1000u64 {
        let phi = random_prop(&mut rng, &atoms, 3);
        let psi = if k % 3 == 0 {
            phi.clone()
        } else {
            random_prop(&mut rng, &atoms, 3)
        };
        let mut used = phi.atoms();
        used.extend(psi.atoms());
        let samples = sample_substitutions(&used, 50, seed.wrapping_add(k));
        match direct_definition_check(&phi, &psi, &samples) {
            Ok(r) => {
                c.require(r.consistent(), || {
                    format!("{phi} / {psi}: a sample contradicts Holds")
                });
                if r.verdict.holds() {
                    holds += 1;
                } else if r.refutation().is_some() {
                    refuted += 1;
                }
                lines.push_str(&serde_json::to_string(&r).expect("serializable"));
                lines.push('\n');
            }
            Err(e) => c.require(false, || e.to_string()),
        }
    }
    c.summary = format!(
        "1000 pairs x 50 substitutions; {holds} hold, {refuted} failures reproduced by a sample"
    );
    ev.write(&mut c, "direct_definition.jsonl", &lines)?;
    Ok(c.finish())
}

fn axiom_fidelity() -> ClaimRecord {
    let mut c = Claim::new("axiom-fidelity");
    let mut n = 0;
    for line in AXIOMS_GOLDEN.lines() {
        let Some((name, golden)) = line.split_once('\t') else {
            continue;
        };
        n += 1;
        let k: u32 = name
            .trim_start_matches("psi")
            .parse()
            .expect("golden names are psi<k>");
        match specific_axiom(k) {
            Ok(f) => {
                let text = f.to_string();
                c.require(text == golden, || format!("{name}: rendered {text}"));
                c.require(f.is_closed(), || format!("{name} has free variables"));
            }
            Err(e) => c.require(false, || e.to_string()),
        }
    }
    c.summary = format!("{n} axioms rendered and closed");
    c.finish()
}

/// `(p1 -> p1) & ... & (p12 -> p12)`, valid in `MD`, so the scan visits every valuation.
pub fn twelve_atom_formula() -> PropFormula {
    let link = |k| PropFormula::imp(PropVar::p(k).into(), PropVar::p(k).into());
    (2..=12).fold(link(1), |acc, k| PropFormula::and(acc, link(k)))
}

fn performance_guard() -> ClaimRecord {
    let mut c = Claim::new("performance-guard");
    let f = twelve_atom_formula();
    let start = Instant::now();
    let verdict = validity(&md(), &f);
    let elapsed = start.elapsed();
    c.require(verdict == Ok(Verdict::Valid), || {
        format!("verdict {verdict:?}")
    });
    c.require(elapsed < Duration::from_secs(5), || {
        "12-atom scan took 5 s or more".into()
    });
    c.summary = "12-atom validity scan over 531441 valuations".into();
    c.finish()
}

fn countermodel_soundness(seed: u64, ev: &Evidence) -> io::Result<ClaimRecord> {
    let mut c = Claim::new("countermodel-soundness");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5bd1_e995);
    let shape = QuantShape {
        depth: 3,
        term_depth: 1,
        vars: 2,
    };
    let (mut found, mut drawn) = (0usize, 0usize);
    let mut lines = String::new();
    while found < 200 && drawn < 20_000 {
        drawn += 1;
        let f = random_fo(&mut rng, &shape);
        let SearchOutcome::Found(s) = search_countermodel(&f, 2, 200_000) else {
            continue;
        };
        found += 1;
        let holds = fo_eval_finite(&f.universal_closure(), &s, &Assignment::new());
        c.require(holds == Ok(false), || {
            format!("{f}: returned structure gives {holds:?}")
        });
        let record = serde_json::json!({ "formula": f.to_string(), "structure": s });
        lines.push_str(&record.to_string());
        lines.push('\n');
    }
    c.require(found == 200, || {
        format!("only {found} refutable formulas in {drawn} draws")
    });
    c.summary = format!("{found} countermodels re-evaluated");
    ev.write(&mut c, "countermodels.jsonl", &lines)?;
    Ok(c.finish())
}

/// Runs every claim. Only evidence-file writes can fail.
pub fn run_report(config: &ReportConfig) -> io::Result<ReportOutcome> {
    let ev = Evidence(config.evidence_dir.as_deref());
    let corpus = two_atom_corpus();
    let axioms =
        generate_logical_axioms(&SchemaSpec::default()).expect("default spec is well formed");
    let claims = vec![
        table_fidelity(&ev)?,
        reduct_coherence(&corpus),
        td_in_z2(&corpus),
        one_atom(&axioms),
        named_verdicts(),
        translation_laws(config.seed),
        bridges(&axioms, Via::Psi12, &ev)?,
        bridges(&axioms, Via::Psi14, &ev)?,
        absorption(&axioms, &ev)?,
        direct_definition(config.seed, &ev)?,
        axiom_fidelity(),
        performance_guard(),
        countermodel_soundness(config.seed, &ev)?,
    ];
    Ok(ReportOutcome {
        seed: config.seed,
        claims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_claims_pass() {
        for r in [
            named_verdicts(),
            axiom_fidelity(),
            table_fidelity(&Evidence(None)).unwrap(),
        ] {
            assert_eq!(r.status, Status::Pass, "{}: {}", r.claim_id, r.detail);
        }
    }

    #[test]
    fn failures_are_reported() {
        let mut c = Claim::new("x");
        c.require(true, || unreachable!());
        c.require(false, || "first".into());
        c.require(false, || "second".into());
        let r = c.finish();
        assert_eq!(r.status, Status::Fail);
        assert!(r.detail.contains("2 failure(s), first: first"));
    }

    #[test]
    fn twelve_atoms() {
        assert_eq!(twelve_atom_formula().atoms().len(), 12);
    }
}
