//! Formula generators: exhaustive enumeration by size and seeded random sampling.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::syntax::{
    ArithAtom, ArithFormula, ArithRel, ArithTerm, Connective, FoFormula, FoTerm, Formula, PredAtom,
    PropFormula, PropVar, Quantifier,
};

/// Every propositional formula over `atoms` using at most `max_size`
/// connective occurrences (negation included), ordered by size.
pub fn enumerate_prop(atoms: &[PropVar], max_size: usize) -> Vec<PropFormula> {
    let mut by_size: Vec<Vec<PropFormula>> =
        vec![atoms.iter().map(|a| PropFormula::Atom(*a)).collect()];
    for n in 1..=max_size {
        let mut level: Vec<PropFormula> = by_size[n - 1]
            .iter()
            .cloned()
            .map(PropFormula::neg)
            .collect();
        for c in Connective::ALL {
            for left in 0..n {
                let right = n - 1 - left;
                for a in &by_size[left] {
                    for b in &by_size[right] {
                        level.push(PropFormula::bin(c, a.clone(), b.clone()));
                    }
                }
            }
        }
        by_size.push(level);
    }
    by_size.into_iter().flatten().collect()
}

/// A random propositional formula of nesting depth at most `depth`.
pub fn random_prop<R: Rng + ?Sized>(rng: &mut R, atoms: &[PropVar], depth: usize) -> PropFormula {
    if depth == 0 || rng.gen_bool(0.25) {
        return PropFormula::Atom(*atoms.choose(rng).expect("non-empty atom pool"));
    }
    match rng.gen_range(0..5) {
        0 => PropFormula::neg(random_prop(rng, atoms, depth - 1)),
        k => PropFormula::bin(
            Connective::ALL[k - 1],
            random_prop(rng, atoms, depth - 1),
            random_prop(rng, atoms, depth - 1),
        ),
    }
}

/// Shape parameters for random quantified formulas.
#[derive(Debug, Clone)]
pub struct QuantShape {
    pub depth: usize,
    pub term_depth: usize,
    /// Variable indices drawn from `1..=vars`.
    pub vars: u32,
}

impl Default for QuantShape {
    fn default() -> Self {
        QuantShape {
            depth: 4,
            term_depth: 2,
            vars: 3,
        }
    }
}

pub fn random_arith_term<R: Rng + ?Sized>(rng: &mut R, vars: u32, depth: usize) -> ArithTerm {
    if depth == 0 || rng.gen_bool(0.4) {
        return if rng.gen_bool(0.2) {
            ArithTerm::One
        } else {
            ArithTerm::Var(rng.gen_range(1..=vars))
        };
    }
    match rng.gen_range(0..3) {
        0 => ArithTerm::succ(random_arith_term(rng, vars, depth - 1)),
        1 => ArithTerm::add(
            random_arith_term(rng, vars, depth - 1),
            random_arith_term(rng, vars, depth - 1),
        ),
        _ => ArithTerm::mul(
            random_arith_term(rng, vars, depth - 1),
            random_arith_term(rng, vars, depth - 1),
        ),
    }
}

pub fn random_fo_term<R: Rng + ?Sized>(rng: &mut R, vars: u32, depth: usize) -> FoTerm {
    if depth == 0 || rng.gen_bool(0.5) {
        return if rng.gen_bool(0.15) {
            FoTerm::Const(rng.gen_range(1..=2))
        } else {
            FoTerm::Var(rng.gen_range(1..=vars))
        };
    }
    let arity = rng.gen_range(1..=2);
    FoTerm::fun(
        rng.gen_range(1..=2),
        (0..arity)
            .map(|_| random_fo_term(rng, vars, depth - 1))
            .collect(),
    )
}

fn random_quantified<A, R: Rng + ?Sized>(
    rng: &mut R,
    shape: &QuantShape,
    depth: usize,
    leaf: &mut impl FnMut(&mut R) -> A,
) -> Formula<A> {
    if depth == 0 || rng.gen_bool(0.2) {
        return Formula::Atom(leaf(rng));
    }
    match rng.gen_range(0..7) {
        0 => Formula::Neg(Box::new(random_quantified(rng, shape, depth - 1, leaf))),
        1 | 2 => {
            let q = if rng.gen_bool(0.5) {
                Quantifier::All
            } else {
                Quantifier::Ex
            };
            let x = rng.gen_range(1..=shape.vars);
            Formula::Quant(
                q,
                x,
                Box::new(random_quantified(rng, shape, depth - 1, leaf)),
            )
        }
        k => Formula::Bin(
            Connective::ALL[k - 3],
            Box::new(random_quantified(rng, shape, depth - 1, leaf)),
            Box::new(random_quantified(rng, shape, depth - 1, leaf)),
        ),
    }
}

pub fn random_arith<R: Rng + ?Sized>(rng: &mut R, shape: &QuantShape) -> ArithFormula {
    let (vars, td) = (shape.vars, shape.term_depth);
    random_quantified(rng, shape, shape.depth, &mut |r: &mut R| ArithAtom {
        rel: if r.gen_bool(0.5) {
            ArithRel::Eq
        } else {
            ArithRel::Lt
        },
        lhs: random_arith_term(r, vars, td),
        rhs: random_arith_term(r, vars, td),
    })
}

/// Random first-order formula over `P1`..`P3` with arities 0..=2.
pub fn random_fo<R: Rng + ?Sized>(rng: &mut R, shape: &QuantShape) -> FoFormula {
    let (vars, td) = (shape.vars, shape.term_depth);
    random_quantified(rng, shape, shape.depth, &mut |r: &mut R| {
        let index = r.gen_range(1..=3);
        // fixed arity per index keeps letters distinct under j
        let arity = (index - 1) as usize;
        PredAtom::new(
            index,
            (0..arity).map(|_| random_fo_term(r, vars, td)).collect(),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn enumeration_counts() {
        let p: PropVar = "p".parse().unwrap();
        let q: PropVar = "q".parse().unwrap();
        // S(n) = S(n-1) + 4 * sum S(i) S(n-1-i)
        assert_eq!(enumerate_prop(&[p], 2).len(), 1 + 5 + 45);
        assert_eq!(enumerate_prop(&[p, q], 2).len(), 2 + 18 + 306);
        let all = enumerate_prop(&[p, q], 2);
        let unique: std::collections::BTreeSet<_> = all.iter().collect();
        assert_eq!(unique.len(), all.len());
    }

    #[test]
    fn random_generation_is_seeded() {
        let shape = QuantShape::default();
        let a = random_arith(&mut ChaCha8Rng::seed_from_u64(3), &shape);
        let b = random_arith(&mut ChaCha8Rng::seed_from_u64(3), &shape);
        assert_eq!(a, b);
        let f = random_fo(&mut ChaCha8Rng::seed_from_u64(9), &shape);
        assert!(crate::translate::mixed_arity_indices(&f).is_empty());
    }
}
