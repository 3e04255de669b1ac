//! Finite logical matrices, exhaustive validity checking and finite
//! first-order structures.

mod countermodel;
mod structure;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{Connective, PropFormula, PropVar};

pub use countermodel::{
    fo_countermodel_search, search_countermodel, SearchOutcome, DEFAULT_SEARCH_BUDGET,
};
pub use structure::{
    fo_eval_finite, Assignment, EvalError, FiniteSemantics, FiniteStructure, FunctionTable,
    Relation,
};

/// Default ceiling on the number of distinct atoms `validity` will enumerate.
pub const DEFAULT_ATOM_CAP: usize = 16;

/// An element of a matrix universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TruthValue(pub u8);

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("connective {connective} is not in the signature of {matrix}")]
    Signature {
        connective: &'static str,
        matrix: String,
    },
    #[error("valuation does not assign atom {0}")]
    MissingAtom(PropVar),
    #[error("valuation assigns {value} to {atom}, outside a universe of size {size}")]
    OutOfUniverse { atom: PropVar, value: u8, size: u8 },
    #[error("formula has {atoms} atoms, above the valuation cap of {cap}")]
    CapExceeded { atoms: usize, cap: usize },
    #[error("malformed matrix: {0}")]
    Invalid(String),
}

/// The built-in matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// Classical two-valued matrix.
    M2,
    /// Three-valued matrix over `{0, 1, 2}` with designated `{1, 2}`.
    MD,
    /// The implication/negation reduct of `MD`.
    MDPrime,
}

impl Builtin {
    pub fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "m2" => Some(Builtin::M2),
            "md" => Some(Builtin::MD),
            "mdp" | "mdprime" | "md'" => Some(Builtin::MDPrime),
            _ => None,
        }
    }
}

// Rows are the first argument, columns the second.
const MD_IMPL: [u8; 9] = [1, 1, 1, 0, 1, 0, 0, 1, 2];
const MD_EQUIV: [u8; 9] = [1, 0, 0, 0, 1, 0, 0, 0, 2];
const MD_DISJ: [u8; 9] = [0, 1, 0, 1, 1, 1, 0, 1, 2];
const MD_CONJ: [u8; 9] = [0, 0, 0, 0, 1, 1, 0, 1, 2];
const MD_NEG: [u8; 3] = [1, 0, 2];

/// A finite algebra of truth values with a designated subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalMatrix {
    name: String,
    size: u8,
    designated: Vec<bool>,
    neg: Option<Vec<u8>>,
    binary: BTreeMap<Connective, Vec<u8>>,
}

impl LogicalMatrix {
    /// Builds a matrix, checking that every table is total and stays inside the universe.
    pub fn new(
        name: impl Into<String>,
        size: u8,
        designated: &[u8],
        neg: Option<Vec<u8>>,
        binary: BTreeMap<Connective, Vec<u8>>,
    ) -> Result<Self, MatrixError> {
        if size < 2 {
            return Err(MatrixError::Invalid(format!(
                "universe size {size} is below 2"
            )));
        }
        if designated.is_empty() {
            return Err(MatrixError::Invalid("designated set is empty".into()));
        }
        let mut marks = vec![false; size as usize];
        for &d in designated {
            if d >= size {
                return Err(MatrixError::Invalid(format!(
                    "designated value {d} outside universe"
                )));
            }
            marks[d as usize] = true;
        }
        let n = size as usize;
        if let Some(t) = &neg {
            if t.len() != n || t.iter().any(|&v| v >= size) {
                return Err(MatrixError::Invalid(
                    "negation table is not a total map on the universe".into(),
                ));
            }
        }
        for (c, t) in &binary {
            if t.len() != n * n || t.iter().any(|&v| v >= size) {
                return Err(MatrixError::Invalid(format!(
                    "table for {} is malformed",
                    c.symbol()
                )));
            }
        }
        Ok(LogicalMatrix {
            name: name.into(),
            size,
            designated: marks,
            neg,
            binary,
        })
    }

    pub fn builtin(which: Builtin) -> Self {
        let md = |with_all: bool| {
            let mut binary = BTreeMap::from([(Connective::Impl, MD_IMPL.to_vec())]);
            if with_all {
                binary.insert(Connective::Equiv, MD_EQUIV.to_vec());
                binary.insert(Connective::Disj, MD_DISJ.to_vec());
                binary.insert(Connective::Conj, MD_CONJ.to_vec());
            }
            binary
        };
        let built = match which {
            Builtin::M2 => LogicalMatrix::new(
                "M2",
                2,
                &[1],
                Some(vec![1, 0]),
                BTreeMap::from([
                    (Connective::Impl, vec![1, 1, 0, 1]),
                    (Connective::Equiv, vec![1, 0, 0, 1]),
                    (Connective::Disj, vec![0, 1, 1, 1]),
                    (Connective::Conj, vec![0, 0, 0, 1]),
                ]),
            ),
            Builtin::MD => LogicalMatrix::new("MD", 3, &[1, 2], Some(MD_NEG.to_vec()), md(true)),
            Builtin::MDPrime => {
                LogicalMatrix::new("MD'", 3, &[1, 2], Some(MD_NEG.to_vec()), md(false))
            }
        };
        built.expect("built-in tables are well formed")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> u8 {
        self.size
    }

    pub fn is_designated(&self, v: TruthValue) -> bool {
        self.designated.get(v.0 as usize).copied().unwrap_or(false)
    }

    pub fn designated(&self) -> Vec<TruthValue> {
        (0..self.size)
            .map(TruthValue)
            .filter(|&v| self.is_designated(v))
            .collect()
    }

    pub fn has_negation(&self) -> bool {
        self.neg.is_some()
    }

    pub fn supports(&self, c: Connective) -> bool {
        self.binary.contains_key(&c)
    }

    pub fn apply_neg(&self, a: TruthValue) -> Option<TruthValue> {
        self.neg.as_ref().map(|t| TruthValue(t[a.0 as usize]))
    }

    pub fn apply(&self, c: Connective, a: TruthValue, b: TruthValue) -> Option<TruthValue> {
        self.binary
            .get(&c)
            .map(|t| TruthValue(t[a.0 as usize * self.size as usize + b.0 as usize]))
    }

    /// Rejects formulas using connectives outside the signature.
    pub fn check_signature(&self, f: &PropFormula) -> Result<(), MatrixError> {
        if f.has_negation() && self.neg.is_none() {
            return Err(MatrixError::Signature {
                connective: "~",
                matrix: self.name.clone(),
            });
        }
        for c in f.connectives() {
            if !self.supports(c) {
                return Err(MatrixError::Signature {
                    connective: c.symbol(),
                    matrix: self.name.clone(),
                });
            }
        }
        Ok(())
    }

    /// Rows of one table as space-separated values, first argument down the side.
    /// For negation each row is `<argument> <value>`.
    pub fn table_rows(&self, op: Option<Connective>) -> Option<Vec<String>> {
        let n = self.size as usize;
        match op {
            None => self.neg.as_ref().map(|t| {
                t.iter()
                    .enumerate()
                    .map(|(a, v)| format!("{a} {v}"))
                    .collect()
            }),
            Some(c) => self.binary.get(&c).map(|t| {
                t.chunks(n)
                    .map(|row| row.iter().map(u8::to_string).collect::<Vec<_>>().join(" "))
                    .collect()
            }),
        }
    }
}

/// An assignment of truth values to propositional variables.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Valuation(pub BTreeMap<PropVar, TruthValue>);

impl Valuation {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (PropVar, u8)>) -> Self {
        Valuation(pairs.into_iter().map(|(k, v)| (k, TruthValue(v))).collect())
    }

    pub fn get(&self, v: &PropVar) -> Option<TruthValue> {
        self.0.get(v).copied()
    }

    /// Values listed in atom order.
    pub fn values(&self) -> Vec<u8> {
        self.0.values().map(|v| v.0).collect()
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.0 {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Outcome of a validity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Valid,
    Counterexample {
        valuation: Valuation,
        value: TruthValue,
    },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Bottom-up table application.
pub fn eval(m: &LogicalMatrix, f: &PropFormula, v: &Valuation) -> Result<TruthValue, MatrixError> {
    m.check_signature(f)?;
    eval_unchecked(m, f, v)
}

fn eval_unchecked(
    m: &LogicalMatrix,
    f: &PropFormula,
    v: &Valuation,
) -> Result<TruthValue, MatrixError> {
    Ok(match f {
        PropFormula::Atom(a) => {
            let val = v.get(a).ok_or(MatrixError::MissingAtom(*a))?;
            if val.0 >= m.size {
                return Err(MatrixError::OutOfUniverse {
                    atom: *a,
                    value: val.0,
                    size: m.size,
                });
            }
            val
        }
        PropFormula::Neg(a) => m
            .apply_neg(eval_unchecked(m, a, v)?)
            .expect("signature checked"),
        PropFormula::Bin(c, a, b) => {
            let x = eval_unchecked(m, a, v)?;
            let y = eval_unchecked(m, b, v)?;
            m.apply(*c, x, y).expect("signature checked")
        }
    })
}

/// Postfix program over dense atom slots; evaluated once per valuation.
enum Instr {
    Load(usize),
    Neg,
    Bin(usize),
}

struct Compiled<'m> {
    m: &'m LogicalMatrix,
    code: Vec<Instr>,
    tables: Vec<&'m [u8]>,
    neg: &'m [u8],
}

impl<'m> Compiled<'m> {
    fn new(m: &'m LogicalMatrix, f: &PropFormula, atoms: &[PropVar]) -> Self {
        let slot: BTreeMap<PropVar, usize> =
            atoms.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        let mut tables: Vec<&[u8]> = Vec::new();
        let mut table_slot: BTreeMap<Connective, usize> = BTreeMap::new();
        let mut code = Vec::new();
        fn emit<'m>(
            m: &'m LogicalMatrix,
            f: &PropFormula,
            slot: &BTreeMap<PropVar, usize>,
            tables: &mut Vec<&'m [u8]>,
            table_slot: &mut BTreeMap<Connective, usize>,
            code: &mut Vec<Instr>,
        ) {
            match f {
                PropFormula::Atom(a) => code.push(Instr::Load(slot[a])),
                PropFormula::Neg(a) => {
                    emit(m, a, slot, tables, table_slot, code);
                    code.push(Instr::Neg);
                }
                PropFormula::Bin(c, a, b) => {
                    emit(m, a, slot, tables, table_slot, code);
                    emit(m, b, slot, tables, table_slot, code);
                    let t = *table_slot.entry(*c).or_insert_with(|| {
                        tables.push(&m.binary[c]);
                        tables.len() - 1
                    });
                    code.push(Instr::Bin(t));
                }
            }
        }
        emit(m, f, &slot, &mut tables, &mut table_slot, &mut code);
        Compiled {
            m,
            code,
            tables,
            neg: m.neg.as_deref().unwrap_or(&[]),
        }
    }

    fn run(&self, values: &[u8], stack: &mut Vec<u8>) -> u8 {
        let n = self.m.size as usize;
        stack.clear();
        for ins in &self.code {
            match *ins {
                Instr::Load(i) => stack.push(values[i]),
                Instr::Neg => {
                    let a = stack.pop().expect("well-formed program");
                    stack.push(self.neg[a as usize]);
                }
                Instr::Bin(t) => {
                    let b = stack.pop().expect("well-formed program");
                    let a = stack.pop().expect("well-formed program");
                    stack.push(self.tables[t][a as usize * n + b as usize]);
                }
            }
        }
        stack[0]
    }
}

/// Decides membership in the set of formulas valid in `m`, enumerating at
/// most [`DEFAULT_ATOM_CAP`] atoms.
pub fn validity(m: &LogicalMatrix, f: &PropFormula) -> Result<Verdict, MatrixError> {
    validity_with_cap(m, f, DEFAULT_ATOM_CAP)
}

/// Exhaustive validity check. Valuations are scanned in lexicographic order
/// (atoms ascending, values ascending), so a counterexample is always the
/// smallest one.
pub fn validity_with_cap(
    m: &LogicalMatrix,
    f: &PropFormula,
    cap: usize,
) -> Result<Verdict, MatrixError> {
    m.check_signature(f)?;
    let atoms: Vec<PropVar> = f.atoms().into_iter().collect();
    if atoms.len() > cap {
        return Err(MatrixError::CapExceeded {
            atoms: atoms.len(),
            cap,
        });
    }
    let prog = Compiled::new(m, f, &atoms);
    let size = m.size;
    let mut values = vec![0u8; atoms.len()];
    let mut stack = Vec::with_capacity(prog.code.len());
    loop {
        let out = prog.run(&values, &mut stack);
        if !m.designated[out as usize] {
            let valuation = Valuation(
                atoms
                    .iter()
                    .zip(&values)
                    .map(|(a, v)| (*a, TruthValue(*v)))
                    .collect(),
            );
            return Ok(Verdict::Counterexample {
                valuation,
                value: TruthValue(out),
            });
        }
        // odometer, last atom fastest
        let mut i = values.len();
        loop {
            if i == 0 {
                return Ok(Verdict::Valid);
            }
            i -= 1;
            values[i] += 1;
            if values[i] < size {
                break;
            }
            values[i] = 0;
        }
    }
}

fn op_label(op: Option<Connective>) -> &'static str {
    op.map(Connective::symbol).unwrap_or("~")
}

/// Renders every table of `m`, in the order `->`, `<->`, `|`, `&`, `~`.
///
/// ```text
/// MD: universe {0, 1, 2}, designated {1, 2}
///
/// ->  | 0 1 2
/// ----+------
/// 0   | 1 1 1
/// ```
pub fn table_dump(m: &LogicalMatrix) -> String {
    let n = m.size as usize;
    let list = |vals: &mut dyn Iterator<Item = String>| vals.collect::<Vec<_>>().join(", ");
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}: universe {{{}}}, designated {{{}}}",
        m.name,
        list(&mut (0..n).map(|v| v.to_string())),
        list(&mut m.designated().into_iter().map(|v| v.to_string()))
    );
    let ops = Connective::ALL
        .iter()
        .copied()
        .filter(|c| m.supports(*c))
        .map(Some)
        .chain(m.has_negation().then_some(None));
    for op in ops {
        let rows = m.table_rows(op).unwrap_or_default();
        out.push('\n');
        match op {
            Some(_) => {
                let header: Vec<String> = (0..n).map(|v| v.to_string()).collect();
                let _ = writeln!(out, "{:<4}| {}", op_label(op), header.join(" "));
                let _ = writeln!(out, "----+{}", "-".repeat(2 * n));
                for (a, row) in rows.iter().enumerate() {
                    let _ = writeln!(out, "{a:<4}| {row}");
                }
            }
            None => {
                let _ = writeln!(out, "{:<4}|", op_label(op));
                let _ = writeln!(out, "----+--");
                for row in &rows {
                    let (a, v) = row.split_once(' ').unwrap_or((row, ""));
                    let _ = writeln!(out, "{a:<4}| {v}");
                }
            }
        }
    }
    out
}

/// All valuations of `atoms` over a universe of `size` values, in lexicographic order.
pub fn valuations(atoms: &BTreeSet<PropVar>, size: u8) -> impl Iterator<Item = Valuation> + '_ {
    let k = atoms.len() as u32;
    let total = (size as u64).pow(k);
    (0..total).map(move |mut code| {
        let mut vals = vec![0u8; atoms.len()];
        for slot in vals.iter_mut().rev() {
            *slot = (code % size as u64) as u8;
            code /= size as u64;
        }
        Valuation(
            atoms
                .iter()
                .copied()
                .zip(vals.into_iter().map(TruthValue))
                .collect(),
        )
    })
}

/// Rewrites `|`, `&` and `<->` into `->` and `~`:
/// `a | b` to `~a -> b`, `a & b` to `~(a -> ~b)`, `a <-> b` to `~((a -> b) -> ~(b -> a))`.
pub fn expand_defined(f: &PropFormula) -> PropFormula {
    match f {
        PropFormula::Atom(_) => f.clone(),
        PropFormula::Neg(a) => PropFormula::neg(expand_defined(a)),
        PropFormula::Bin(c, a, b) => {
            let (a, b) = (expand_defined(a), expand_defined(b));
            match c {
                Connective::Impl => PropFormula::imp(a, b),
                Connective::Disj => PropFormula::imp(PropFormula::neg(a), b),
                Connective::Conj => PropFormula::neg(PropFormula::imp(a, PropFormula::neg(b))),
                Connective::Equiv => PropFormula::neg(PropFormula::imp(
                    PropFormula::imp(a.clone(), b.clone()),
                    PropFormula::neg(PropFormula::imp(b, a)),
                )),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_prop;

    fn md() -> LogicalMatrix {
        LogicalMatrix::builtin(Builtin::MD)
    }

    fn val(pairs: &[(&str, u8)]) -> Valuation {
        Valuation::from_pairs(pairs.iter().map(|(k, v)| (k.parse().unwrap(), *v)))
    }

    #[test]
    fn builtin_lookups() {
        let m = md();
        assert_eq!(
            m.apply(Connective::Impl, TruthValue(1), TruthValue(2)),
            Some(TruthValue(0))
        );
        assert_eq!(m.apply_neg(TruthValue(2)), Some(TruthValue(2)));
        let m2 = LogicalMatrix::builtin(Builtin::M2);
        assert_eq!(
            m2.apply(Connective::Impl, TruthValue(0), TruthValue(0)),
            Some(TruthValue(1))
        );
        assert_eq!(m.designated(), vec![TruthValue(1), TruthValue(2)]);
        let mdp = LogicalMatrix::builtin(Builtin::MDPrime);
        assert!(mdp.supports(Connective::Impl) && !mdp.supports(Connective::Disj));
    }

    #[test]
    fn eval_examples() {
        let m = md();
        let f = parse_prop("p -> q").unwrap();
        assert_eq!(
            eval(&m, &f, &val(&[("p", 0), ("q", 2)])).unwrap(),
            TruthValue(1)
        );
        let g = parse_prop("p | q").unwrap();
        assert_eq!(
            eval(&m, &g, &val(&[("p", 2), ("q", 0)])).unwrap(),
            TruthValue(0)
        );
        let h = parse_prop("(p & q) -> p").unwrap();
        assert_eq!(
            eval(&m, &h, &val(&[("p", 2), ("q", 1)])).unwrap(),
            TruthValue(0)
        );
    }

    #[test]
    fn eval_errors() {
        let mdp = LogicalMatrix::builtin(Builtin::MDPrime);
        let f = parse_prop("p | q").unwrap();
        assert!(matches!(
            eval(&mdp, &f, &val(&[("p", 0), ("q", 0)])),
            Err(MatrixError::Signature {
                connective: "|",
                ..
            })
        ));
        let g = parse_prop("p -> q").unwrap();
        assert_eq!(
            eval(&md(), &g, &val(&[("p", 0)])),
            Err(MatrixError::MissingAtom("q".parse().unwrap()))
        );
        assert!(matches!(
            eval(&md(), &g, &val(&[("p", 0), ("q", 5)])),
            Err(MatrixError::OutOfUniverse { value: 5, .. })
        ));
    }

    #[test]
    fn validity_examples() {
        let m = md();
        let check = |s: &str| validity(&m, &parse_prop(s).unwrap()).unwrap();
        assert_eq!(check("p -> p"), Verdict::Valid);
        assert_eq!(
            check("(p & q) -> p"),
            Verdict::Counterexample {
                valuation: val(&[("p", 2), ("q", 1)]),
                value: TruthValue(0)
            }
        );
        assert_eq!(check("p | ~p"), Verdict::Valid);
        let m2 = LogicalMatrix::builtin(Builtin::M2);
        assert_eq!(
            validity(&m2, &parse_prop("(p & q) -> p").unwrap()).unwrap(),
            Verdict::Valid
        );
    }

    #[test]
    fn cap_is_enforced() {
        let f = parse_prop("p -> q -> s -> t").unwrap();
        assert_eq!(
            validity_with_cap(&md(), &f, 3),
            Err(MatrixError::CapExceeded { atoms: 4, cap: 3 })
        );
    }

    #[test]
    fn table_rows_match_printed_tables() {
        let m = md();
        assert_eq!(
            m.table_rows(Some(Connective::Conj)).unwrap(),
            ["0 0 0", "0 1 1", "0 1 2"]
        );
        assert_eq!(
            m.table_rows(Some(Connective::Equiv)).unwrap(),
            ["1 0 0", "0 1 0", "0 0 2"]
        );
        let m2 = LogicalMatrix::builtin(Builtin::M2);
        assert_eq!(m2.table_rows(None).unwrap(), ["0 1", "1 0"]);
    }

    #[test]
    fn malformed_matrices_are_rejected() {
        assert!(LogicalMatrix::new("x", 1, &[0], None, BTreeMap::new()).is_err());
        assert!(LogicalMatrix::new("x", 2, &[], None, BTreeMap::new()).is_err());
        assert!(LogicalMatrix::new("x", 2, &[2], None, BTreeMap::new()).is_err());
        assert!(LogicalMatrix::new("x", 2, &[1], Some(vec![0, 2]), BTreeMap::new()).is_err());
        assert!(LogicalMatrix::new(
            "x",
            2,
            &[1],
            None,
            BTreeMap::from([(Connective::Impl, vec![1, 1, 0])])
        )
        .is_err());
    }

    #[test]
    fn valuation_enumeration_is_lexicographic() {
        let atoms: BTreeSet<PropVar> = ["p", "q"].iter().map(|s| s.parse().unwrap()).collect();
        let all: Vec<Vec<u8>> = valuations(&atoms, 3).map(|v| v.values()).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], [0, 0]);
        assert_eq!(all[1], [0, 1]);
        assert_eq!(all[8], [2, 2]);
    }

    #[test]
    fn m2_dump() {
        let dump = table_dump(&LogicalMatrix::builtin(Builtin::M2));
        assert!(dump.starts_with("M2: universe {0, 1}, designated {1}\n"));
        assert!(dump.ends_with("~   |\n----+--\n0   | 1\n1   | 0\n"));
    }

    #[test]
    fn defined_connectives_agree_with_their_tables() {
        let mdp = LogicalMatrix::builtin(Builtin::MDPrime);
        for src in ["p | q", "p & q", "p <-> q", "(p <-> ~q) & (q | p)"] {
            let f = parse_prop(src).unwrap();
            let g = expand_defined(&f);
            for v in valuations(&f.atoms(), 3) {
                assert_eq!(
                    eval(&md(), &f, &v).unwrap(),
                    eval(&mdp, &g, &v).unwrap(),
                    "{src} at {v}"
                );
            }
        }
        assert_eq!(
            expand_defined(&parse_prop("p | q").unwrap()),
            parse_prop("~p -> q").unwrap()
        );
    }
}
