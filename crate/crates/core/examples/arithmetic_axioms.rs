//! The specific axioms, an induction instance, and a classified corpus of
//! logical axioms.

use std::collections::BTreeMap;

use atomlog::arithmetic::{
    classify_axiom, generate_logical_axioms, induction_instance, one_atom_lemma_check,
    specific_axiom, AxiomClass, SchemaSpec,
};
use atomlog::syntax::parse_arith;
use atomlog::translate::translate_i;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for k in (1..=12).chain([14]) {
        let f = specific_axiom(k)?;
        println!("psi{k:<3} {f}");
    }
    let a = parse_arith("x1 * 1 = x1")?;
    println!(
        "\ninduction on x1 for {a}:\n  {}",
        induction_instance(&a, 1)?
    );

    let corpus = generate_logical_axioms(&SchemaSpec::default())?;
    let mut counts: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut example = None;
    for member in &corpus {
        let kind = serde_json::to_string(&member.kind)?;
        let entry = counts.entry(kind).or_default();
        match classify_axiom(&member.formula)? {
            AxiomClass::InLdr => entry.0 += 1,
            AxiomClass::Excluded { witness, value } => {
                entry.1 += 1;
                example.get_or_insert((member.formula.clone(), witness, value));
            }
        }
    }
    println!("\n{} certified logical axioms:", corpus.len());
    for (kind, (kept, excluded)) in &counts {
        println!("  {kind:<26} in L_D^r: {kept:<6} excluded: {excluded}");
    }
    if let Some((f, witness, value)) = example {
        println!(
            "\nexcluded: {f}\n  i-image {} takes {value} at {witness}",
            translate_i(&f)
        );
    }
    let lemma = one_atom_lemma_check(corpus.iter().map(|m| &m.formula))?;
    println!(
        "\none-predicate members: {} with =, {} with <, all in L_D^r: {}",
        lemma.only_eq,
        lemma.only_lt,
        lemma.passed()
    );
    Ok(())
}
