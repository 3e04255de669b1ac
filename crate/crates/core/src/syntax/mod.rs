//! Formula sorts, their term languages, parsing, printing and the syntactic
//! operators: variable collectors, term substitution, closure and star.

mod parse;
mod prop;
mod quant;
mod render;
mod term;

pub use parse::{
    parse_arith, parse_arith_term, parse_fo, parse_fo_term, parse_prop, parse_prop_var,
    parse_variable, ParseError,
};
pub use prop::{Connective, Letter, PropFormula, PropVar};
pub use quant::{
    ArithAtom, ArithFormula, ArithRel, Atomic, CaptureError, FoFormula, Formula, PredAtom,
    PredLetter, Quantifier,
};
pub use term::{ArithTerm, FoTerm, Term};

/// A formula of any of the three sorts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AnyFormula {
    Prop(PropFormula),
    Fo(FoFormula),
    Arith(ArithFormula),
}

/// The three formula sorts.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum SortKind {
    Prop,
    Fo,
    Arith,
}

impl SortKind {
    pub fn parse_formula(self, text: &str) -> Result<AnyFormula, ParseError> {
        Ok(match self {
            SortKind::Prop => AnyFormula::Prop(parse_prop(text)?),
            SortKind::Fo => AnyFormula::Fo(parse_fo(text)?),
            SortKind::Arith => AnyFormula::Arith(parse_arith(text)?),
        })
    }
}

impl std::fmt::Display for SortKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SortKind::Prop => "prop",
            SortKind::Fo => "fo",
            SortKind::Arith => "arith",
        })
    }
}

impl AnyFormula {
    pub fn sort(&self) -> SortKind {
        match self {
            AnyFormula::Prop(_) => SortKind::Prop,
            AnyFormula::Fo(_) => SortKind::Fo,
            AnyFormula::Arith(_) => SortKind::Arith,
        }
    }

    /// Splits an implication into antecedent and consequent.
    pub fn as_impl(&self) -> Option<(AnyFormula, AnyFormula)> {
        match self {
            AnyFormula::Prop(f) => f
                .as_impl()
                .map(|(a, b)| (AnyFormula::Prop(a.clone()), AnyFormula::Prop(b.clone()))),
            AnyFormula::Fo(f) => f
                .as_impl()
                .map(|(a, b)| (AnyFormula::Fo(a.clone()), AnyFormula::Fo(b.clone()))),
            AnyFormula::Arith(f) => f
                .as_impl()
                .map(|(a, b)| (AnyFormula::Arith(a.clone()), AnyFormula::Arith(b.clone()))),
        }
    }

    /// `∀x φ` for the quantified sorts.
    pub fn generalize(&self, x: u32) -> Option<AnyFormula> {
        match self {
            AnyFormula::Prop(_) => None,
            AnyFormula::Fo(f) => Some(AnyFormula::Fo(Formula::forall(x, f.clone()))),
            AnyFormula::Arith(f) => Some(AnyFormula::Arith(Formula::forall(x, f.clone()))),
        }
    }

    /// `α*` in whichever sort.
    pub fn star(&self) -> AnyFormula {
        match self {
            AnyFormula::Prop(f) => AnyFormula::Prop(f.star()),
            AnyFormula::Fo(f) => AnyFormula::Fo(f.star()),
            AnyFormula::Arith(f) => AnyFormula::Arith(f.star()),
        }
    }
}

impl std::fmt::Display for AnyFormula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnyFormula::Prop(x) => x.fmt(f),
            AnyFormula::Fo(x) => x.fmt(f),
            AnyFormula::Arith(x) => x.fmt(f),
        }
    }
}

impl From<PropFormula> for AnyFormula {
    fn from(f: PropFormula) -> Self {
        AnyFormula::Prop(f)
    }
}

impl From<FoFormula> for AnyFormula {
    fn from(f: FoFormula) -> Self {
        AnyFormula::Fo(f)
    }
}

impl From<ArithFormula> for AnyFormula {
    fn from(f: ArithFormula) -> Self {
        AnyFormula::Arith(f)
    }
}

// Formulas travel through JSON as their rendered text.
macro_rules! serde_as_text {
    ($($ty:ty),*) => {$(
        impl serde::Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> serde::Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let text = String::deserialize(d)?;
                text.parse().map_err(serde::de::Error::custom)
            }
        }
    )*};
}

serde_as_text!(
    PropFormula,
    FoFormula,
    ArithFormula,
    PropVar,
    ArithTerm,
    FoTerm
);

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn v(letter: Letter, index: Option<u32>) -> PropFormula {
        PropFormula::Atom(PropVar::new(letter, index))
    }

    fn p() -> PropFormula {
        v(Letter::P, None)
    }

    fn q() -> PropFormula {
        v(Letter::Q, None)
    }

    fn x(k: u32) -> ArithTerm {
        ArithTerm::Var(k)
    }

    fn eq(a: ArithTerm, b: ArithTerm) -> ArithFormula {
        Formula::Atom(ArithAtom {
            rel: ArithRel::Eq,
            lhs: a,
            rhs: b,
        })
    }

    fn pred(i: u32, args: Vec<FoTerm>) -> FoFormula {
        Formula::Atom(PredAtom::new(i, args))
    }

    #[test]
    fn prop_var_order() {
        let mut vars: Vec<PropVar> = ["t", "q1", "p", "p0", "s", "p2", "q"]
            .iter()
            .map(|s| parse_prop_var(s).unwrap())
            .collect();
        vars.sort();
        let names: Vec<String> = vars.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["p", "p0", "p2", "q", "q1", "s", "t"]);
    }

    #[test]
    fn parse_prop_examples() {
        assert_eq!(parse_prop("p -> p").unwrap(), PropFormula::imp(p(), p()));
        assert_eq!(
            parse_prop("(p & q) -> p").unwrap(),
            PropFormula::imp(PropFormula::and(p(), q()), p())
        );
        let expected = PropFormula::equiv(
            PropFormula::or(PropFormula::neg(v(Letter::P, Some(2))), q()),
            v(Letter::S, None),
        );
        assert_eq!(parse_prop("~p2 | q <-> s").unwrap(), expected);
    }

    #[test]
    fn implication_is_right_associative_equivalence_left() {
        assert_eq!(
            parse_prop("p -> q -> s").unwrap(),
            parse_prop("p -> (q -> s)").unwrap()
        );
        assert_eq!(
            parse_prop("p <-> q <-> s").unwrap(),
            parse_prop("(p <-> q) <-> s").unwrap()
        );
        assert_eq!(
            parse_prop("p | q & s").unwrap(),
            parse_prop("p | (q & s)").unwrap()
        );
    }

    #[test]
    fn parse_errors_report_offset_and_expectations() {
        let err = parse_prop("p -> ").unwrap_err();
        assert_eq!(err.offset(), 5);
        match err {
            ParseError::Syntax {
                expected, found, ..
            } => {
                assert!(expected.contains("propositional variable"));
                assert_eq!(found, "end of input");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_prop("p & r"),
            Err(ParseError::Syntax { offset: 4, .. })
        ));
        assert!(matches!(
            parse_prop("p # q"),
            Err(ParseError::Lex { offset: 2, ch: '#' })
        ));
        assert!(parse_prop("(p -> q").is_err());
        assert!(parse_prop("p q").is_err());
        assert!(parse_prop("p01").is_err());
    }

    #[test]
    fn parse_fo_examples() {
        let a = pred(1, vec![FoTerm::Var(1)]);
        assert_eq!(
            parse_fo("(all x1 (P1_1(x1) -> P1_1(x1)))").unwrap(),
            Formula::forall(1, Formula::imp(a.clone(), a.clone()))
        );
        assert_eq!(
            parse_fo("(ex x3 P2_2(x1, f1_1(x3)))").unwrap(),
            Formula::exists(
                3,
                pred(
                    2,
                    vec![FoTerm::Var(1), FoTerm::fun(1, vec![FoTerm::Var(3)])]
                )
            )
        );
        // distinct letters P1^1 and P1^2 may share an index
        let mixed = parse_fo("P1_1(x1) & P1_2(x1, x2)").unwrap();
        assert_eq!(
            mixed.predicate_letters(),
            BTreeSet::from([
                PredLetter { index: 1, arity: 1 },
                PredLetter { index: 1, arity: 2 }
            ])
        );
    }

    #[test]
    fn fo_arity_mismatch_is_an_error() {
        assert!(matches!(
            parse_fo("P1_2(x1)"),
            Err(ParseError::Arity {
                declared: 2,
                used: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_fo("P1_1(f2_2(x1))"),
            Err(ParseError::Arity {
                declared: 2,
                used: 1,
                ..
            })
        ));
    }

    #[test]
    fn parse_arith_examples() {
        assert_eq!(parse_arith("x1 = x1").unwrap(), eq(x(1), x(1)));
        assert_eq!(
            parse_arith("x1 + x2 * x3 = x1").unwrap(),
            parse_arith("(x1 + (x2 * x3)) = x1").unwrap()
        );
        assert_eq!(
            parse_arith("x1 + x2 * x3 = x1").unwrap(),
            eq(ArithTerm::add(x(1), ArithTerm::mul(x(2), x(3))), x(1))
        );
        let psi7 = Formula::forall(
            1,
            Formula::neg(eq(ArithTerm::One, ArithTerm::add(x(1), ArithTerm::One))),
        );
        assert_eq!(parse_arith("(all x1 ~(1 = x1 + 1))").unwrap(), psi7);
        // parenthesized term vs parenthesized formula
        assert_eq!(
            parse_arith("(x1 + x2) + 1 = x1").unwrap(),
            eq(
                ArithTerm::add(ArithTerm::add(x(1), x(2)), ArithTerm::One),
                x(1)
            )
        );
        assert_eq!(
            parse_arith("(x1 = x2) -> x1 = x2").unwrap(),
            parse_arith("x1 = x2 -> x1 = x2").unwrap()
        );
    }

    #[test]
    fn render_examples() {
        assert_eq!(PropFormula::imp(p(), p()).to_string(), "p -> p");
        assert_eq!(
            PropFormula::neg(PropFormula::and(p(), q())).to_string(),
            "~(p & q)"
        );
        assert_eq!(
            Formula::forall(1, eq(x(1), x(1))).to_string(),
            "(all x1 x1 = x1)"
        );
        assert_eq!(
            PropFormula::imp(PropFormula::imp(p(), q()), p()).to_string(),
            "(p -> q) -> p"
        );
        assert_eq!(
            parse_arith("x1 * (x2 + 1) = x1 * x2 + x1")
                .unwrap()
                .to_string(),
            "x1 * (x2 + 1) = x1 * x2 + x1"
        );
        assert_eq!(parse_arith("~x1 = x2").unwrap().to_string(), "~(x1 = x2)");
    }

    #[test]
    fn atoms_examples() {
        let set = |s: &str| {
            parse_prop(s)
                .unwrap()
                .atoms()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        };
        assert_eq!(set("p & q"), ["p", "q"]);
        assert_eq!(set("p -> (p -> p)"), ["p"]);
        assert_eq!(set("~q1 <-> (s | q1)"), ["q1", "s"]);
    }

    #[test]
    fn predicate_letters_examples() {
        let f = parse_fo("P1_1(x1) & P2_2(x1, x2)").unwrap();
        assert_eq!(
            f.predicate_letters(),
            BTreeSet::from([
                PredLetter { index: 1, arity: 1 },
                PredLetter { index: 2, arity: 2 }
            ])
        );
        let psi7 = parse_arith("(all x1 ~(1 = x1 + 1))").unwrap();
        assert_eq!(psi7.predicate_letters(), BTreeSet::from([ArithRel::Eq]));
        let psi12 = parse_arith("(all x1 (all x2 (x1 < x2 <-> (ex x3 x1 + x3 = x2))))").unwrap();
        assert_eq!(
            psi12.predicate_letters(),
            BTreeSet::from([ArithRel::Eq, ArithRel::Lt])
        );
        assert!(psi12.free_vars().is_empty());
    }

    #[test]
    fn free_vars_examples() {
        let f = parse_fo("(all x1 P1_2(x1, x2))").unwrap();
        assert_eq!(f.free_vars(), BTreeSet::from([2]));
        assert_eq!(
            parse_arith("x1 = x2").unwrap().free_vars(),
            BTreeSet::from([1, 2])
        );
    }

    #[test]
    fn free_for_examples() {
        let captured = parse_fo("(all x2 P1_2(x1, x2))").unwrap();
        assert!(!captured.free_for(1, &FoTerm::Var(2)));
        let open = parse_fo("P1_2(x1, x2)").unwrap();
        assert!(open.free_for(1, &FoTerm::Var(2)));
        // S(x1) only mentions x1, and a binder of x1 hides every occurrence
        let f = parse_arith("(all x2 x1 = x2) & (all x1 x1 = x1)").unwrap();
        assert!(f.free_for(1, &ArithTerm::succ(x(1))));
        // variable bound above but the occurrence sits elsewhere
        let g = parse_arith("(all x2 x2 = x2) -> x1 = x2").unwrap();
        assert!(g.free_for(1, &x(2)));
    }

    #[test]
    fn substitute_examples() {
        let f = parse_arith("x1 = x1").unwrap();
        assert_eq!(
            f.substitute(1, &ArithTerm::One).unwrap().to_string(),
            "1 = 1"
        );
        let g = parse_arith("(all x1 x1 = x2)").unwrap();
        assert_eq!(
            g.substitute(2, &ArithTerm::succ(x(3))).unwrap().to_string(),
            "(all x1 x1 = S(x3))"
        );
        let h = parse_arith("(all x2 x1 = x2)").unwrap();
        assert_eq!(
            h.substitute(1, &x(2)),
            Err(CaptureError { var: 1, binder: 2 })
        );
        // bound occurrences stay put
        let k = parse_arith("x1 = 1 & (all x1 x1 = x1)").unwrap();
        assert_eq!(
            k.substitute(1, &x(5)).unwrap().to_string(),
            "x5 = 1 & (all x1 x1 = x1)"
        );
    }

    #[test]
    fn closure_examples() {
        let f = parse_arith("x1 = x2").unwrap();
        assert_eq!(
            f.universal_closure().to_string(),
            "(all x1 (all x2 x1 = x2))"
        );
        let psi1 = parse_arith("(all x1 x1 = x1)").unwrap();
        assert_eq!(psi1.universal_closure(), psi1);
        let g = parse_fo("P1_1(x3)").unwrap();
        assert_eq!(g.universal_closure().to_string(), "(all x3 P1_1(x3))");
    }

    #[test]
    fn star_examples() {
        assert_eq!(parse_prop("p & q").unwrap().star().to_string(), "~(p & q)");
        assert_eq!(
            parse_fo("P1_1(x1)").unwrap().star().to_string(),
            "(ex x1 ~P1_1(x1))"
        );
        let psi1 = parse_arith("(all x1 x1 = x1)").unwrap();
        assert_eq!(psi1.star(), Formula::neg(psi1.clone()));
        assert_eq!(psi1.star().star(), Formula::neg(Formula::neg(psi1)));
        assert_eq!(
            parse_fo("P1_2(x2, x1)").unwrap().star().to_string(),
            "(ex x1 (ex x2 ~P1_2(x2, x1)))"
        );
    }

    #[test]
    fn any_formula_helpers() {
        let f = AnyFormula::Arith(parse_arith("x1 = x1 -> x1 = x1").unwrap());
        assert!(f.as_impl().is_some());
        assert_eq!(
            f.generalize(2).unwrap().to_string(),
            "(all x2 (x1 = x1 -> x1 = x1))"
        );
        assert!(AnyFormula::Prop(p()).generalize(1).is_none());
        assert_eq!(
            SortKind::Fo.parse_formula("P1_1(x1)").unwrap().sort(),
            SortKind::Fo
        );
    }

    #[test]
    fn formulas_serialize_as_text() {
        let f = parse_prop("p -> q").unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, "\"p -> q\"");
        let back: PropFormula = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
