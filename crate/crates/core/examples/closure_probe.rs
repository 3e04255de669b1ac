//! Bounded forward closure under modus ponens and substitution, with a
//! derivation extracted for a reached formula.

use atomlog::proofcheck::{check, closure_probe, Oracles, ProbeConfig, RuleSet};
use atomlog::syntax::{parse_prop, parse_prop_var, AnyFormula};
use atomlog::translate::PropSubstitution;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seeds: Vec<AnyFormula> = ["p", "p -> q", "q -> ~~q"]
        .iter()
        .map(|s| parse_prop(s).map(AnyFormula::from))
        .collect::<Result<_, _>>()?;
    let config = ProbeConfig {
        depth: 2,
        substitutions: vec![
            PropSubstitution::new().with(parse_prop_var("q")?, parse_prop("p -> p")?)
        ],
        ..ProbeConfig::default()
    };
    let oracles = Oracles::named(&["td"]).map_err(|n| format!("unknown oracle {n}"))?;
    let probe = closure_probe(&seeds, &oracles, RuleSet::R0_STAR, &config)?;
    println!("{} seeds, {} derived:", probe.seeds, probe.derived().len());
    for f in probe.derived() {
        println!("  {f}");
    }

    let target: AnyFormula = parse_prop("~~q")?.into();
    if let Some(k) = probe.formulas.iter().position(|f| f == &target) {
        let d = probe.derivation(k);
        print!("\nderivation of {target}:\n{}", d.to_jsonl());
        println!("checks: {}", check(&d, &oracles, RuleSet::R0_STAR).is_ok());
    }
    Ok(())
}
