//! An excluded logical axiom recovered by modus ponens from a specific
//! axiom, and the derivation checked.

use atomlog::arithmetic::{bridge_derivation, classify_axiom, Via};
use atomlog::proofcheck::{check, Derivation, Oracles, RuleSet};
use atomlog::syntax::parse_arith;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alpha = parse_arith("(all x1 (all x2 (x1 < x2 -> (x1 = x1 -> x1 < x2))))")?;
    println!(
        "alpha = {alpha}\n  {}",
        serde_json::to_string(&classify_axiom(&alpha)?)?
    );

    let oracles = Oracles::named(&["xp", "ldr"]).map_err(|n| format!("unknown oracle {n}"))?;
    for via in [Via::Psi12, Via::Psi14] {
        let bridge = bridge_derivation(&alpha, via)?;
        let text = bridge.derivation.to_jsonl();
        println!(
            "\nvia {via:?}, middle image {} is valid in MD\n{text}",
            bridge.image
        );
        let reread = Derivation::from_jsonl(&text)?;
        for step in check(&reread, &oracles, RuleSet::R0P_PLUS)? {
            println!("  {} {}: {}", step.index, step.just, step.detail);
        }
    }

    // Without the bridge, alpha itself is not an axiom of L_D^r.
    let mut direct = Derivation::new(atomlog::syntax::SortKind::Arith);
    direct.push(
        alpha,
        atomlog::proofcheck::Justification::Axiom("ldr".into()),
    );
    println!(
        "\ndirect use: {}",
        check(&direct, &oracles, RuleSet::R0P_PLUS).unwrap_err()
    );
    Ok(())
}
