//! The `atomlog` command line.
//!
//! Exit codes: 0 on success, 1 for a domain error or a negative answer
//! (a counterexample, a failed entailment, a rejected derivation, a missing
//! countermodel, a failed report claim), 2 for a usage error. Domain errors
//! are written to stdout as one JSON record `{"error": .., "message": ..}`.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arithmetic::{
    bridge_derivation, classification_record, generate_logical_axioms, induction_instance,
    AxiomClass, AxiomId, BridgeError, SchemaSpec, Via,
};
use crate::entailment::{
    atomic_entails_prop_with_cap, classical_entails_prop_with_cap, EntailVerdict, Evidence,
    FailReason,
};
use crate::matrix::{
    search_countermodel, table_dump, validity_with_cap, Builtin, LogicalMatrix, SearchOutcome,
    TruthValue, Verdict, DEFAULT_ATOM_CAP, DEFAULT_SEARCH_BUDGET,
};
use crate::proofcheck::{check, Derivation, Oracles, RuleSet};
use crate::report::{run_report, ReportConfig, Status};
use crate::syntax::{parse_arith, parse_fo, parse_prop, parse_variable, Connective, ParseError};
use crate::translate::{mixed_arity_indices, translate_i, translate_j};

/// Environment variable overriding the valuation cap.
pub const ATOM_CAP_VAR: &str = "ATOMLOG_ATOM_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "atomlog",
    version,
    about = "Atomic entailment, the matrix MD and its arithmetic"
)]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MatrixName {
    M2,
    Md,
    Mdp,
}

impl From<MatrixName> for Builtin {
    fn from(m: MatrixName) -> Builtin {
        match m {
            MatrixName::M2 => Builtin::M2,
            MatrixName::Md => Builtin::MD,
            MatrixName::Mdp => Builtin::MDPrime,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MapName {
    /// First-order formulas, predicate `P_k` to `p_k`.
    J,
    /// Arithmetic formulas, `=` to `p1` and `<` to `p2`.
    I,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RulesName {
    /// Modus ponens and generalization.
    R0pPlus,
    /// Modus ponens and substitution.
    R0Star,
    Mp,
    Gen,
}

impl From<RulesName> for RuleSet {
    fn from(r: RulesName) -> RuleSet {
        match r {
            RulesName::R0pPlus => RuleSet::R0P_PLUS,
            RulesName::R0Star => RuleSet::R0_STAR,
            RulesName::Mp => RuleSet::MP_ONLY,
            RulesName::Gen => RuleSet::GEN_ONLY,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the tables of a built-in matrix.
    Table {
        #[arg(value_enum)]
        matrix: MatrixName,
    },
    /// Decide validity of a propositional formula in a matrix.
    Valid {
        #[arg(long, value_enum)]
        matrix: MatrixName,
        formula: String,
    },
    /// Decide whether PSI follows from PHI, atomically (in MD) or classically.
    #[command(group(ArgGroup::new("relation").required(true).args(["atomic", "classical"])))]
    Entail {
        #[arg(long)]
        atomic: bool,
        #[arg(long)]
        classical: bool,
        phi: String,
        psi: String,
    },
    /// Erase quantifiers and terms.
    Translate {
        #[arg(long, value_enum)]
        map: MapName,
        formula: String,
    },
    /// Print a specific arithmetic axiom, `psi1`..`psi12` or `psi14`.
    Axiom { name: String },
    /// Print the induction instance for a formula and variable.
    Induction {
        formula: String,
        #[arg(long)]
        var: String,
    },
    /// Generate a certified corpus of logical axioms and classify each member.
    Classify {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Write the three-step derivation of an excluded axiom.
    Bridge {
        alpha: String,
        /// `psi12` or `psi14`.
        #[arg(long)]
        via: Via,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Check a derivation file.
    Checkproof {
        file: PathBuf,
        /// Comma-separated oracle names; all built-in oracles by default.
        #[arg(long, value_delimiter = ',')]
        oracles: Option<Vec<String>>,
        /// Rule set; the customary one for the declared sort by default.
        #[arg(long, value_enum)]
        rules: Option<RulesName>,
    },
    /// Search for a finite structure falsifying the universal closure of a formula.
    Countermodel {
        formula: String,
        #[arg(long)]
        max_domain: usize,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Re-check every claim at desk scale.
    Report {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Write evidence files into this directory.
        #[arg(long)]
        evidence_dir: Option<PathBuf>,
    },
}

/// A domain error, reported as a JSON record.
#[derive(Debug)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
    pub detail: Value,
}

impl Failure {
    fn new(kind: &'static str, message: impl Display) -> Self {
        Failure {
            kind,
            message: message.to_string(),
            detail: Value::Null,
        }
    }

    fn with(mut self, detail: Value) -> Self {
        self.detail = detail;
        self
    }

    pub fn record(&self) -> Value {
        let mut rec = json!({ "error": self.kind, "message": self.message });
        if let (Value::Object(extra), Some(obj)) = (&self.detail, rec.as_object_mut()) {
            for (k, v) in extra {
                obj.insert(k.clone(), v.clone());
            }
        }
        rec
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        let offset = e.offset();
        Failure::new("parse", e).with(json!({ "offset": offset }))
    }
}

impl From<crate::matrix::MatrixError> for Failure {
    fn from(e: crate::matrix::MatrixError) -> Self {
        Failure::new("matrix", e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new("io", e)
    }
}

/// Parses `args` (program name first) and runs the command, writing to `out`
/// and `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return e.exit_code();
        }
    };
    let cap = match std::env::var(ATOM_CAP_VAR) {
        Err(_) => DEFAULT_ATOM_CAP,
        Ok(s) => match s.trim().parse() {
            Ok(n) => n,
            Err(_) => {
                let _ = writeln!(
                    err,
                    "error: {ATOM_CAP_VAR} must be a non-negative integer, found {s:?}"
                );
                return 2;
            }
        },
    };
    match execute(&cli, cap, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(out, "{}", f.record());
            1
        }
    }
}

/// Runs an already parsed command with the given valuation cap.
pub fn execute(
    cli: &Cli,
    cap: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Table { matrix } => {
            let m = LogicalMatrix::builtin((*matrix).into());
            if json {
                emit(out, &table_json(&m))?;
            } else {
                write!(out, "{}", table_dump(&m))?;
            }
            Ok(0)
        }
        Command::Valid { matrix, formula } => {
            let m = LogicalMatrix::builtin((*matrix).into());
            let f = parse_prop(formula)?;
            let verdict = validity_with_cap(&m, &f, cap)?;
            if json {
                emit(
                    out,
                    &json!({ "matrix": m.name(), "formula": f, "result": verdict }),
                )?;
            } else {
                match &verdict {
                    Verdict::Valid => writeln!(out, "valid in {}", m.name())?,
                    Verdict::Counterexample { valuation, value } => {
                        writeln!(out, "counterexample: {valuation} (value {value})")?
                    }
                }
            }
            Ok(if verdict.is_valid() { 0 } else { 1 })
        }
        Command::Entail {
            atomic, phi, psi, ..
        } => {
            let (phi, psi) = (parse_prop(phi)?, parse_prop(psi)?);
            let (relation, verdict) = if *atomic {
                ("atomic", atomic_entails_prop_with_cap(&phi, &psi, cap)?)
            } else {
                (
                    "classical",
                    classical_entails_prop_with_cap(&phi, &psi, cap)?,
                )
            };
            if json {
                emit(
                    out,
                    &json!({ "relation": relation, "phi": phi, "psi": psi, "result": verdict }),
                )?;
            } else {
                writeln!(out, "{}", describe_verdict(&verdict))?;
            }
            Ok(if verdict.holds() { 0 } else { 1 })
        }
        Command::Translate { map, formula } => {
            let (input, image, mixed) = match map {
                MapName::J => {
                    let f = parse_fo(formula)?;
                    let mixed = mixed_arity_indices(&f);
                    (f.to_string(), translate_j(&f), mixed)
                }
                MapName::I => {
                    let f = parse_arith(formula)?;
                    (f.to_string(), translate_i(&f), Default::default())
                }
            };
            if !mixed.is_empty() {
                let list: Vec<String> = mixed.iter().map(|k| format!("P{k}")).collect();
                writeln!(
                    err,
                    "warning: {} used with several arities share one image atom",
                    list.join(", ")
                )?;
            }
            if json {
                emit(
                    out,
                    &json!({ "formula": input, "image": image, "mixedArity": mixed }),
                )?;
            } else {
                writeln!(out, "{image}")?;
            }
            Ok(0)
        }
        Command::Axiom { name } => {
            let f = name
                .parse::<AxiomId>()
                .and_then(|id| id.formula().map_err(|e| e.to_string()))
                .map_err(|m| Failure::new("axiom", m))?;
            if json {
                emit(out, &json!({ "axiom": name, "formula": f }))?;
            } else {
                writeln!(out, "{f}")?;
            }
            Ok(0)
        }
        Command::Induction { formula, var } => {
            let a = parse_arith(formula)?;
            let x = parse_variable(var)?;
            let f = induction_instance(&a, x).map_err(|e| Failure::new("capture", e))?;
            if json {
                emit(out, &json!({ "formula": a, "var": x, "instance": f }))?;
            } else {
                writeln!(out, "{f}")?;
            }
            Ok(0)
        }
        Command::Classify { spec } => {
            let text = std::fs::read_to_string(spec)?;
            let spec: SchemaSpec =
                serde_json::from_str(&text).map_err(|e| Failure::new("spec", e))?;
            let corpus = generate_logical_axioms(&spec).map_err(|e| Failure::new("spec", e))?;
            let mut rows = Vec::new();
            for a in &corpus {
                let rec = classification_record(&a.formula)?;
                if json {
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string(&rec).expect("serializable")
                    )?;
                } else {
                    let (class, witness) = match &rec.class {
                        AxiomClass::InLdr => ("in_ldr".to_string(), "-".to_string()),
                        AxiomClass::Excluded { witness, value } => {
                            ("excluded".to_string(), format!("{witness} -> {value}"))
                        }
                    };
                    rows.push(vec![
                        class,
                        witness,
                        rec.image.to_string(),
                        rec.formula.to_string(),
                    ]);
                }
            }
            if !json {
                let header = ["class", "witness", "image", "formula"]
                    .map(String::from)
                    .to_vec();
                write!(out, "{}", aligned(header, rows))?;
            }
            Ok(0)
        }
        Command::Bridge { alpha, via, output } => {
            let alpha = parse_arith(alpha)?;
            let bridge = bridge_derivation(&alpha, *via).map_err(bridge_failure)?;
            std::fs::write(output, bridge.derivation.to_jsonl())?;
            if json {
                emit(
                    out,
                    &json!({
                        "output": output,
                        "steps": bridge.derivation.steps.len(),
                        "image": bridge.image,
                        "imageValidIn": "MD",
                    }),
                )?;
            } else {
                writeln!(
                    out,
                    "wrote {} steps to {}",
                    bridge.derivation.steps.len(),
                    output.display()
                )?;
                writeln!(out, "step 2 image {} is valid in MD", bridge.image)?;
            }
            Ok(0)
        }
        Command::Checkproof {
            file,
            oracles,
            rules,
        } => {
            let text = std::fs::read_to_string(file)?;
            let d = Derivation::from_jsonl(&text)
                .map_err(|e| Failure::new("format", &e).with(json!({ "line": e.line })))?;
            let oracles = match oracles {
                None => Oracles::standard(),
                Some(names) => {
                    let names: Vec<&str> = names.iter().map(String::as_str).collect();
                    Oracles::named(&names)
                        .map_err(|n| Failure::new("usage", format!("unknown oracle {n:?}")))?
                }
            };
            let rules = rules
                .map(RuleSet::from)
                .unwrap_or(RuleSet::for_sort(d.sort));
            let evidence = check(&d, &oracles, rules).map_err(|e| {
                Failure::new("step", &e).with(json!({ "index": e.index, "failure": e.reason }))
            })?;
            if json {
                emit(
                    out,
                    &json!({ "accepted": true, "sort": d.sort, "steps": evidence }),
                )?;
            } else {
                let rows = evidence
                    .iter()
                    .map(|s| vec![s.index.to_string(), s.just.clone(), s.detail.clone()])
                    .collect();
                let header = ["step", "rule", "evidence"].map(String::from).to_vec();
                write!(out, "{}", aligned(header, rows))?;
                writeln!(out, "accepted: {} steps", evidence.len())?;
            }
            Ok(0)
        }
        Command::Countermodel {
            formula,
            max_domain,
            budget,
        } => {
            let f = parse_fo(formula)?;
            match search_countermodel(&f, *max_domain, *budget) {
                SearchOutcome::Found(s) => {
                    if json {
                        emit(out, &json!({ "formula": f, "structure": s }))?;
                    } else {
                        writeln!(out, "countermodel with {} element(s):", s.domain)?;
                        writeln!(out, "{}", serde_json::to_string(&s).expect("serializable"))?;
                    }
                    Ok(0)
                }
                SearchOutcome::Exhausted => Err(Failure::new(
                    "no-countermodel",
                    format!(
                        "no structure with at most {max_domain} element(s) falsifies the closure"
                    ),
                )),
                SearchOutcome::BudgetExceeded { domain } => Err(Failure::new(
                    "budget",
                    format!("search budget of {budget} exhausted at domain size {domain}"),
                )
                .with(json!({ "domain": domain }))),
            }
        }
        Command::Report { seed, evidence_dir } => {
            let outcome = run_report(&ReportConfig {
                seed: *seed,
                evidence_dir: evidence_dir.clone(),
            })?;
            if json {
                emit(out, &outcome)?;
            } else {
                let rows = outcome
                    .claims
                    .iter()
                    .map(|c| {
                        let status = match c.status {
                            Status::Pass => "pass",
                            Status::Fail => "FAIL",
                        };
                        vec![c.claim_id.to_string(), status.to_string(), c.detail.clone()]
                    })
                    .collect();
                let header = ["claim", "status", "detail"].map(String::from).to_vec();
                write!(out, "{}", aligned(header, rows))?;
                let failed = outcome
                    .claims
                    .iter()
                    .filter(|c| c.status == Status::Fail)
                    .count();
                if failed == 0 {
                    writeln!(
                        out,
                        "all {} claims pass (seed {seed})",
                        outcome.claims.len()
                    )?;
                } else {
                    writeln!(
                        out,
                        "{failed} of {} claims fail (seed {seed})",
                        outcome.claims.len()
                    )?;
                }
            }
            Ok(outcome.exit_code())
        }
    }
}

fn emit(out: &mut dyn Write, v: &impl Serialize) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string(v).expect("serializable"))
}

fn bridge_failure(e: BridgeError) -> Failure {
    match &e {
        BridgeError::Precondition(_) => Failure::new("precondition", &e),
        BridgeError::Evidence {
            image,
            witness,
            value,
        } => Failure::new("evidence", &e)
            .with(json!({ "image": image, "witness": witness, "value": value })),
        BridgeError::Matrix(_) => Failure::new("matrix", &e),
    }
}

fn table_json(m: &LogicalMatrix) -> Value {
    let vals: Vec<TruthValue> = (0..m.size()).map(TruthValue).collect();
    let mut tables = serde_json::Map::new();
    for c in Connective::ALL.into_iter().filter(|c| m.supports(*c)) {
        let rows: Vec<Vec<u8>> = vals
            .iter()
            .map(|a| {
                vals.iter()
                    .filter_map(|b| m.apply(c, *a, *b))
                    .map(|v| v.0)
                    .collect()
            })
            .collect();
        tables.insert(c.symbol().to_string(), json!(rows));
    }
    if m.has_negation() {
        let row: Vec<u8> = vals
            .iter()
            .filter_map(|a| m.apply_neg(*a))
            .map(|v| v.0)
            .collect();
        tables.insert("~".into(), json!(row));
    }
    json!({
        "matrix": m.name(),
        "universe": vals,
        "designated": m.designated(),
        "tables": tables,
    })
}

fn describe_verdict(v: &EntailVerdict) -> String {
    let evidence = match v.evidence() {
        Evidence::Exact => "exact".to_string(),
        Evidence::L2Assumed => "classical validity assumed".to_string(),
        Evidence::L2Unknown { note } => format!("not authoritative: {note}"),
        Evidence::Sampled => "sampled substitution".to_string(),
    };
    match v {
        EntailVerdict::Holds { .. } => format!("holds ({evidence})"),
        EntailVerdict::Fails { reason, .. } => {
            let why = match reason {
                FailReason::NotValidInMatrix {
                    matrix,
                    formula,
                    witness,
                    value,
                } => {
                    format!("{formula} takes {value} at {witness} in {matrix}")
                }
                FailReason::AtomInclusionFails {
                    substitution,
                    offending,
                } => {
                    let atoms: Vec<String> = offending.iter().map(|a| a.to_string()).collect();
                    format!("atoms {} are lost under {substitution}", atoms.join(", "))
                }
                FailReason::L2Refuted { structure } => {
                    format!(
                        "refuted by a structure with {} element(s)",
                        structure.domain
                    )
                }
            };
            format!("fails ({evidence}): {why}")
        }
    }
}

/// Left-aligned columns separated by two spaces; the last column is not padded.
fn aligned(header: Vec<String>, rows: Vec<Vec<String>>) -> String {
    let all: Vec<Vec<String>> = std::iter::once(header).chain(rows).collect();
    let cols = all.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|i| {
            all.iter()
                .filter_map(|r| r.get(i))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut s = String::new();
    for row in &all {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i + 1 < row.len() {
                line.push_str(&format!("{cell:<w$}  ", w = widths[i]));
            } else {
                line.push_str(cell);
            }
        }
        s.push_str(line.trim_end());
        s.push('\n');
    }
    s
}
