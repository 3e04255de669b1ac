//! Prints the built-in matrices and evaluates a formula under one valuation.

use atomlog::matrix::{eval, table_dump, Builtin, LogicalMatrix, Valuation};
use atomlog::syntax::{parse_prop, parse_prop_var};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for which in [Builtin::M2, Builtin::MD, Builtin::MDPrime] {
        println!("{}", table_dump(&LogicalMatrix::builtin(which)));
    }

    let md = LogicalMatrix::builtin(Builtin::MD);
    let f = parse_prop("(p & q) -> p")?;
    let v = Valuation::from_pairs([(parse_prop_var("p")?, 2), (parse_prop_var("q")?, 1)]);
    println!("{f} at {v} takes {}", eval(&md, &f, &v)?);
    Ok(())
}
