mod common;

use atomlog::entailment::sample_substitutions;
use atomlog::gen::{random_arith, random_arith_term, random_fo, random_prop, QuantShape};
use atomlog::matrix::{
    eval, expand_defined, validity, Builtin, LogicalMatrix, TruthValue, Valuation, Verdict,
};
use atomlog::syntax::{parse_arith, parse_fo, parse_prop, Formula, Letter, PropVar};
use atomlog::translate::{atoms_image_law, subst_prop, translate_i, translate_j, PropSubstitution};
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const POOL: [PropVar; 3] = [
    PropVar::bare(Letter::P),
    PropVar::bare(Letter::Q),
    PropVar::p(1),
];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_shape() -> QuantShape {
    QuantShape {
        depth: 3,
        term_depth: 2,
        vars: 3,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn prop_render_parses_back(seed: u64, depth in 0usize..6) {
        let f = random_prop(&mut rng(seed), &POOL, depth);
        prop_assert_eq!(parse_prop(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn quantified_render_parses_back(seed: u64) {
        let mut r = rng(seed);
        let a = random_arith(&mut r, &QuantShape::default());
        prop_assert_eq!(parse_arith(&a.to_string()).unwrap(), a);
        let f = random_fo(&mut r, &QuantShape::default());
        prop_assert_eq!(parse_fo(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn closures_are_closed(seed: u64) {
        let mut r = rng(seed);
        let a = random_arith(&mut r, &small_shape());
        prop_assert!(a.universal_closure().free_vars().is_empty());
        let f = random_fo(&mut r, &small_shape());
        let closed = f.universal_closure();
        prop_assert!(closed.is_closed());
        prop_assert_eq!(closed.universal_closure(), closed);
    }

    #[test]
    fn translations_erase_quantifiers_and_terms(seed: u64, x in 1u32..4) {
        let mut r = rng(seed);
        let a = random_arith(&mut r, &small_shape());
        prop_assert_eq!(translate_i(&a), erase_i(&a));
        prop_assert_eq!(translate_i(&Formula::exists(x, a.clone())), translate_i(&a));
        let t = random_arith_term(&mut r, 3, 2);
        if let Ok(b) = a.substitute(x, &t) {
            prop_assert_eq!(translate_i(&b), translate_i(&a));
        }
        let f = random_fo(&mut r, &small_shape());
        prop_assert_eq!(translate_j(&f), erase_j(&f));
        prop_assert_eq!(translate_j(&f.star()), star(&translate_j(&f)));
    }

    #[test]
    fn substitution_composes(seed: u64) {
        let mut r = rng(seed);
        let f = random_prop(&mut r, &POOL, 3);
        let atoms = POOL.iter().copied().collect();
        let subs = sample_substitutions(&atoms, 2, seed);
        let (e1, e2) = (&subs[0], &subs[1]);
        let composed = e2.after(e1);
        prop_assert_eq!(subst_prop(&composed, &f), subst_prop(e2, &subst_prop(e1, &f)));
        prop_assert_eq!(subst_prop(e1, &f), subst(&e1.0, &f));
        prop_assert!(atoms_image_law(e1, &f));
        prop_assert!(atoms_image_law(&composed, &f));
    }

    #[test]
    fn substitution_json_round_trip(seed: u64) {
        let atoms = POOL.iter().copied().collect();
        let e = sample_substitutions(&atoms, 1, seed).remove(0);
        let back: PropSubstitution = serde_json::from_str(&e.to_string()).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn md_validity_matches_reference(seed: u64, depth in 0usize..5) {
        let f = random_prop(&mut rng(seed), &POOL, depth);
        let md = LogicalMatrix::builtin(Builtin::MD);
        match validity(&md, &f).unwrap() {
            Verdict::Valid => {
                prop_assert!(md_valid(&f));
                prop_assert!(m2_valid(&f));
                prop_assert!(validity(&LogicalMatrix::builtin(Builtin::M2), &f).unwrap().is_valid());
            }
            Verdict::Counterexample { valuation, value } => {
                let (v, x) = md_counterexample(&f).unwrap();
                prop_assert_eq!(valuation, Valuation::from_pairs(v));
                prop_assert_eq!(value, TruthValue(x));
            }
        }
    }

    #[test]
    fn defined_connectives_reduce(seed: u64, depth in 0usize..5) {
        let f = random_prop(&mut rng(seed), &POOL, depth);
        let g = expand_defined(&f);
        prop_assert_eq!(&g, &delta(&f));
        let mdp = LogicalMatrix::builtin(Builtin::MDPrime);
        for v in assignments(&f, 3) {
            let lv = Valuation::from_pairs(v.clone());
            prop_assert_eq!(eval(&mdp, &g, &lv).unwrap(), TruthValue(md_eval(&f, &v)));
        }
    }
}
