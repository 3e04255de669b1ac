//! Finite countermodel search, with every structure re-checked by the
//! evaluator.

use atomlog::matrix::{
    fo_countermodel_search, fo_eval_finite, search_countermodel, Assignment, SearchOutcome,
};
use atomlog::syntax::parse_fo;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in [
        "P1_1(x1) -> P1_1(x2)",
        "(ex x1 P1_1(x1)) -> (all x1 P1_1(x1))",
        "(all x1 (ex x2 P1_2(x1, x2))) -> (ex x2 (all x1 P1_2(x1, x2)))",
        "P1_1(f1_1(x1)) -> P1_1(x1)",
        "(all x1 P1_1(x1)) -> P1_1(x2)",
    ] {
        let f = parse_fo(text)?;
        match fo_countermodel_search(&f, 3) {
            Some(s) => {
                let value = fo_eval_finite(&f.universal_closure(), &s, &Assignment::new())?;
                println!(
                    "{f}\n  falsified in {}\n  closure evaluates to {value}",
                    serde_json::to_string(&s)?
                );
            }
            None => println!("{f}\n  no countermodel with at most 3 elements"),
        }
    }

    let big = parse_fo("P1_2(f1_2(x1, x2), f2_2(x2, x1)) -> P1_2(x1, x2)")?;
    match search_countermodel(&big, 3, 1_000) {
        SearchOutcome::BudgetExceeded { domain } => {
            println!("\n{big}\n  budget of 1000 interpretations runs out at domain size {domain}")
        }
        other => println!("\n{big}\n  {other:?}"),
    }
    Ok(())
}
