//! The quantifier-erasing translations and substitution endomorphisms.

use atomlog::syntax::{parse_arith, parse_fo, parse_prop, parse_prop_var, FoFormula};
use atomlog::translate::{
    atoms_image_law, mixed_arity_indices, subst_prop, translate_i, translate_j, PropSubstitution,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_fo("(all x1 (P1_1(x1) -> (ex x2 P2_2(x1, f1_1(x2)))))")?;
    println!("j({f}) = {}", translate_j(&f));
    println!("j({}) = {}", f.star(), translate_j(&f.star()));

    let g = parse_fo("P1_1(x1) & P1_2(x1, x1)")?;
    println!(
        "P1 used with arities 1 and 2: {:?} -> j = {}",
        mixed_arity_indices(&g),
        translate_j(&g)
    );

    for axiom in [12, 14] {
        let a = atomlog::arithmetic::specific_axiom(axiom)?;
        println!("i(psi{axiom}) = {}", translate_i(&a));
    }
    let t = parse_arith("x1 + 1 < x2 * x2 -> ~(x1 = 1)")?;
    println!("i({t}) = {}", translate_i(&t));

    let e = PropSubstitution::new()
        .with(parse_prop_var("p")?, parse_prop("q -> s")?)
        .with(parse_prop_var("q")?, parse_prop("~p")?);
    let h = parse_prop("p & q -> p")?;
    println!("\ne = {e}\nh^e({h}) = {}", subst_prop(&e, &h));
    println!(
        "atoms of the image are the atoms of the images of atoms: {}",
        atoms_image_law(&e, &h)
    );

    let closed: FoFormula = parse_fo("P1_1(x1) -> P1_1(x2)")?.universal_closure();
    println!("\nuniversal closure: {closed}");
    Ok(())
}
