//! Validity in MD: verdicts with their least counterexamples, the reduct
//! to `->` and `~`, and the valuation cap.

use atomlog::matrix::{
    eval, expand_defined, validity, validity_with_cap, valuations, Builtin, LogicalMatrix, Verdict,
};
use atomlog::syntax::parse_prop;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let md = LogicalMatrix::builtin(Builtin::MD);
    let m2 = LogicalMatrix::builtin(Builtin::M2);
    for text in [
        "p -> p",
        "p | ~p",
        "(p & q) -> p",
        "p -> (p | q)",
        "(p & q) -> (p | q)",
    ] {
        let f = parse_prop(text)?;
        let classical = validity(&m2, &f)?.is_valid();
        let shown = f.to_string();
        match validity(&md, &f)? {
            Verdict::Valid => println!("{shown:<22} valid in MD (classically valid: {classical})"),
            Verdict::Counterexample { valuation, value } => {
                println!("{shown:<22} fails in MD at {valuation}, value {value} (classically valid: {classical})")
            }
        }
    }

    // Disjunction, conjunction and equivalence are definable from -> and ~.
    let mdp = LogicalMatrix::builtin(Builtin::MDPrime);
    let f = parse_prop("(p <-> q) | (p & ~q)")?;
    let reduced = expand_defined(&f);
    let agree =
        valuations(&f.atoms(), 3).all(|v| eval(&md, &f, &v).ok() == eval(&mdp, &reduced, &v).ok());
    println!("\n{f}\n  reduces to {reduced}\n  same value under all 9 valuations: {agree}");

    let wide = parse_prop("p1 -> p2 -> p3 -> p4")?;
    println!(
        "\nwith a cap of 3 atoms: {}",
        validity_with_cap(&md, &wide, 3).unwrap_err()
    );
    Ok(())
}
