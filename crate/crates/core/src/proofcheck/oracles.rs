use crate::arithmetic::{match_induction, specific_axiom};
use crate::certify::certify_l2;
use crate::matrix::{validity, Builtin, LogicalMatrix, Verdict};
use crate::syntax::{AnyFormula, PropFormula};
use crate::translate::{translate_i, translate_j};

use super::AxiomOracle;

fn md_check(image: &PropFormula) -> Result<String, String> {
    match validity(&LogicalMatrix::builtin(Builtin::MD), image) {
        Ok(Verdict::Valid) => Ok(format!("image {image} is valid in MD")),
        Ok(Verdict::Counterexample { valuation, value }) => {
            Err(format!("image {image} takes {value} at {valuation} in MD"))
        }
        Err(e) => Err(e.to_string()),
    }
}

/// Membership in `X_P` by syntactic identity with one of `ψ¹`–`ψ¹²`.
pub struct XpOracle;

impl AxiomOracle for XpOracle {
    fn name(&self) -> &str {
        "xp"
    }

    fn admit(&self, f: &AnyFormula) -> Result<String, String> {
        let AnyFormula::Arith(f) = f else {
            return Err("not an arithmetic formula".into());
        };
        (1..=12)
            .find(|k| specific_axiom(*k).is_ok_and(|a| &a == f))
            .map(|k| format!("psi{k}"))
            .ok_or_else(|| "not one of psi1..psi12".into())
    }
}

/// Membership in `Y_P` by matching the induction schema.
pub struct YpOracle;

impl AxiomOracle for YpOracle {
    fn name(&self) -> &str {
        "yp"
    }

    fn admit(&self, f: &AnyFormula) -> Result<String, String> {
        let AnyFormula::Arith(f) = f else {
            return Err("not an arithmetic formula".into());
        };
        match_induction(f)
            .map(|(a, x)| format!("induction on x{x} for {a}"))
            .ok_or_else(|| "not an induction instance".into())
    }
}

/// Membership in `L₂^r`: a certificate of classical validity.
pub struct L2rOracle;

impl AxiomOracle for L2rOracle {
    fn name(&self) -> &str {
        "l2r"
    }

    fn admit(&self, f: &AnyFormula) -> Result<String, String> {
        let AnyFormula::Arith(f) = f else {
            return Err("not an arithmetic formula".into());
        };
        certify_l2(f)
            .map(|c| c.to_string())
            .ok_or_else(|| "no classical-validity certificate".into())
    }
}

/// Membership in `L_D^r`: certified classical validity and an `MD`-valid `i`-image.
pub struct LdrOracle;

impl AxiomOracle for LdrOracle {
    fn name(&self) -> &str {
        "ldr"
    }

    fn admit(&self, f: &AnyFormula) -> Result<String, String> {
        let AnyFormula::Arith(f) = f else {
            return Err("not an arithmetic formula".into());
        };
        let cert = certify_l2(f).ok_or("no classical-validity certificate")?;
        Ok(format!("{cert}; {}", md_check(&translate_i(f))?))
    }
}

/// Membership in `L_D`: certified classical validity and an `MD`-valid `j`-image.
pub struct LdOracle;

impl AxiomOracle for LdOracle {
    fn name(&self) -> &str {
        "ld"
    }

    fn admit(&self, f: &AnyFormula) -> Result<String, String> {
        let AnyFormula::Fo(f) = f else {
            return Err("not a first-order formula".into());
        };
        let cert = certify_l2(f).ok_or("no classical-validity certificate")?;
        Ok(format!("{cert}; {}", md_check(&translate_j(f))?))
    }
}

/// Validity of a propositional formula in a built-in matrix:
/// `td` for `MD`, `z2` for `M2`.
pub struct MatrixOracle {
    name: &'static str,
    matrix: LogicalMatrix,
}

impl MatrixOracle {
    pub fn td() -> Self {
        MatrixOracle {
            name: "td",
            matrix: LogicalMatrix::builtin(Builtin::MD),
        }
    }

    pub fn z2() -> Self {
        MatrixOracle {
            name: "z2",
            matrix: LogicalMatrix::builtin(Builtin::M2),
        }
    }
}

impl AxiomOracle for MatrixOracle {
    fn name(&self) -> &str {
        self.name
    }

    fn admit(&self, f: &AnyFormula) -> Result<String, String> {
        let AnyFormula::Prop(p) = f else {
            return Err("not a propositional formula".into());
        };
        match validity(&self.matrix, p) {
            Ok(Verdict::Valid) => Ok(format!("valid in {}", self.matrix.name())),
            Ok(Verdict::Counterexample { valuation, value }) => Err(format!(
                "takes {value} at {valuation} in {}",
                self.matrix.name()
            )),
            Err(e) => Err(e.to_string()),
        }
    }
}

/// A set of oracles addressed by name.
#[derive(Default)]
pub struct Oracles(Vec<Box<dyn AxiomOracle>>);

impl Oracles {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, o: impl AxiomOracle + 'static) -> Self {
        self.0.push(Box::new(o));
        self
    }

    /// Every built-in oracle: `xp`, `yp`, `l2r`, `ldr`, `ld`, `td`, `z2`.
    pub fn standard() -> Self {
        Oracles::new()
            .with(XpOracle)
            .with(YpOracle)
            .with(L2rOracle)
            .with(LdrOracle)
            .with(LdOracle)
            .with(MatrixOracle::td())
            .with(MatrixOracle::z2())
    }

    /// The built-in oracles with the given names; unknown names are returned as the error.
    pub fn named(names: &[&str]) -> Result<Self, String> {
        let mut all = Oracles::standard().0;
        let mut out = Oracles::new();
        for n in names {
            let k = all
                .iter()
                .position(|o| o.name() == *n)
                .ok_or_else(|| n.to_string())?;
            out.0.push(all.remove(k));
        }
        Ok(out)
    }

    pub fn get(&self, name: &str) -> Option<&dyn AxiomOracle> {
        self.0.iter().find(|o| o.name() == name).map(|o| o.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn AxiomOracle> {
        self.0.iter().map(|o| o.as_ref())
    }

    pub fn names(&self) -> Vec<&str> {
        self.0.iter().map(|o| o.name()).collect()
    }
}
