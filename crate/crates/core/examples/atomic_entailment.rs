//! Atomic entailment against classical entailment, the direct definition
//! checked on sampled substitutions, and the first-order case.

use atomlog::entailment::{
    atomic_entails_fo, atomic_entails_prop, classical_entails_prop, direct_definition_check,
    sample_substitutions, L2Mode,
};
use atomlog::syntax::{parse_fo, parse_prop};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pairs = [
        ("p", "p"),
        ("p & q", "p"),
        ("p", "p | q"),
        ("p & q", "p | q"),
        ("p", "q -> p"),
    ];
    for (a, b) in pairs {
        let (phi, psi) = (parse_prop(a)?, parse_prop(b)?);
        let atomic = atomic_entails_prop(&phi, &psi)?;
        let classical = classical_entails_prop(&phi, &psi)?;
        println!(
            "{a:<6} => {b:<7} atomic: {:<5} classical: {}",
            atomic.holds(),
            classical.holds()
        );
    }

    let (phi, psi) = (parse_prop("p & q")?, parse_prop("p")?);
    let mut atoms = phi.atoms();
    atoms.extend(psi.atoms());
    let samples = sample_substitutions(&atoms, 20, 7);
    let report = direct_definition_check(&phi, &psi, &samples)?;
    println!(
        "\n{phi} => {psi}: {} of {} sampled substitutions violate a condition; consistent with the verdict: {}",
        report.violations().count(),
        report.samples.len(),
        report.consistent()
    );
    if let Some(first) = report.violations().next() {
        println!("first violation: {}", serde_json::to_string(first)?);
    }

    let (phi, psi) = (parse_fo("P1_1(x1)")?, parse_fo("P1_1(x2)")?);
    for mode in [
        L2Mode::Assume,
        L2Mode::SkeletonNecessary,
        L2Mode::bounded(2),
    ] {
        let v = atomic_entails_fo(&phi, &psi, mode)?;
        println!(
            "\n{phi} => {psi} under {mode:?}:\n  {}",
            serde_json::to_string(&v)?
        );
    }
    let (phi, psi) = (parse_fo("P1_1(x1) | P2_0()")?, parse_fo("P1_1(x1)")?);
    let v = atomic_entails_fo(&phi, &psi, L2Mode::bounded(2))?;
    println!("\n{phi} => {psi}:\n  {}", serde_json::to_string(&v)?);
    Ok(())
}
