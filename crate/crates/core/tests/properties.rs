mod common;

use common::{random_standard_ib, same_closure};
use dbase_core::dbase_ib::ReducedBase;
use dbase_core::lattice::{classify, d_relation, delta_relation};
use dbase_core::model::maximal_sets;
use dbase_core::oracle::Oracle;
use dbase_core::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn standard_ib(max_n: usize) -> impl Strategy<Value = ImplicationalBase> {
    any::<u64>().prop_map(move |seed| random_standard_ib(&mut StdRng::seed_from_u64(seed), max_n, 12))
}

fn binary_ib(max_n: usize) -> impl Strategy<Value = ImplicationalBase> {
    (2..=max_n, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = StdRng::seed_from_u64(seed);
        // Arcs only from larger to smaller indices keep the system standard.
        let arcs: Vec<Implication> = (0..rng.gen_range(0..=n * 2))
            .filter_map(|_| {
                let a = rng.gen_range(0..n);
                let c = rng.gen_range(0..n);
                (a > c).then(|| Implication::binary(a, c)).flatten()
            })
            .collect();
        ImplicationalBase::new(GroundSet::numbered(n), arcs).unwrap()
    })
}

fn subsets(n: usize) -> impl Iterator<Item = ElementSet> {
    (0u64..1 << n).map(ElementSet::from_mask)
}

/// A random antichain of closed sets of `ctx`, never empty.
fn closed_antichain(ctx: &ClosureContext, seed: u64) -> Vec<ElementSet> {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = ctx.len();
    let picks: Vec<ElementSet> =
        (0..rng.gen_range(1..=4)).map(|_| ctx.close(&ElementSet::from_mask(rng.gen_range(0..1u64 << n)))).collect();
    maximal_sets(&picks)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_axioms(ib in standard_ib(7)) {
        let ctx = ClosureContext::from_ib(&ib);
        let n = ctx.len();
        for a in subsets(n) {
            let cl = ctx.close(&a);
            let clb = ctx.close_binary(&a);
            prop_assert!(a.is_subset(&cl) && a.is_subset(&clb));
            prop_assert!(clb.is_subset(&cl));
            prop_assert_eq!(ctx.close(&cl), cl);
            prop_assert_eq!(ctx.close_binary(&clb), clb);
            for x in 0..n {
                let b = a.with(x);
                prop_assert!(cl.is_subset(&ctx.close(&b)));
                prop_assert!(clb.is_subset(&ctx.close_binary(&b)));
            }
        }
    }

    #[test]
    fn binary_part_is_exact(ib in standard_ib(8)) {
        let ctx = ClosureContext::from_ib(&ib);
        let part = ctx.binary_part();
        let expected: usize = (0..ctx.len()).map(|a| ctx.singleton_closure(a).len() - 1).sum();
        prop_assert_eq!(part.len(), expected);
        for imp in part.iter() {
            let a = imp.premise.first().unwrap();
            prop_assert!(ctx.singleton_closure(a).contains(imp.conclusion));
        }
    }

    #[test]
    fn meet_irreducibles_regenerate_closed_sets(ib in standard_ib(8)) {
        let ctx = ClosureContext::from_ib(&ib);
        let mi = meet_irreducibles(&ctx, 16).unwrap();
        let from_mi = ClosureContext::from_mi(&mi);
        for a in subsets(ctx.len()) {
            prop_assert_eq!(ctx.close(&a), from_mi.close(&a));
        }
    }

    #[test]
    fn distributive_formula_agrees(ib in binary_ib(8)) {
        let formula = meet_irreducibles_distributive(&ib).unwrap();
        let general = meet_irreducibles(&ClosureContext::from_ib(&ib), 16).unwrap();
        prop_assert_eq!(formula.to_btree(), general.to_btree());
    }

    #[test]
    fn relations_and_classes(ib in standard_ib(8)) {
        let ctx = ClosureContext::from_ib(&ib);
        let mi = meet_irreducibles(&ctx, 16).unwrap();
        prop_assert!(d_relation(&mi, &ctx).is_subset(&delta_relation(&mi)));
        let class = classify(&ib, 16).unwrap();
        prop_assert!(!class.graph_acyclic || class.is_acyclic);
        prop_assert!(!class.is_acyclic || class.is_lower_bounded);
    }

    #[test]
    fn d_generator_test_matches_definition(ib in standard_ib(7)) {
        let ctx = ClosureContext::from_ib(&ib);
        let oracle = Oracle::new(&ctx, 16).unwrap();
        for c in 0..ctx.len() {
            let expected = oracle.d_generators(c);
            for a in subsets(ctx.len()).filter(|a| !a.contains(c)) {
                prop_assert_eq!(is_d_generator(&ctx, &a, c).unwrap(), expected.contains(&a));
            }
            prop_assert_eq!(has_d_generators(&ctx, c), !expected.is_empty());
        }
    }

    #[test]
    fn reduced_base_keys_generate_target(ib in standard_ib(7)) {
        let ctx = ClosureContext::from_ib(&ib);
        for c in (0..ctx.len()).filter(|&c| has_d_generators(&ctx, c)) {
            let rb = ReducedBase::build(&ib, &ctx, c, ElementOrder::default()).unwrap();
            prop_assert!(rb.context().is_standard());
            for s in subsets(ctx.len()).filter(|s| s.is_subset(&rb.u_c())) {
                prop_assert_eq!(rb.is_key(&s), ctx.close(&s).contains(c));
            }
        }
    }

    #[test]
    fn d_base_is_an_equivalent_sub_base(ib in standard_ib(8)) {
        let ctx = ClosureContext::from_ib(&ib);
        let dbase = d_base(&ib, ElementOrder::default()).unwrap();
        prop_assert!(same_closure(&ib, &dbase));
        let oracle = Oracle::new(&ctx, 16).unwrap();
        for imp in dbase.non_binary_implications() {
            prop_assert!(is_d_generator(&ctx, &imp.premise, imp.conclusion).unwrap());
            prop_assert!(oracle.minimal_generators(imp.conclusion).contains(&imp.premise));
        }
    }

    #[test]
    fn dualization_is_an_involution(ib in binary_ib(7), seed in any::<u64>()) {
        let ctx = ClosureContext::from_ib(&ib);
        let b_plus = SetFamily::new(ib.ground().clone(), closed_antichain(&ctx, seed)).unwrap();
        let b_minus = dualize_distributive(&ib, &b_plus).unwrap();
        let brute = oracle::brute_dual(&ib, &b_plus, 16).unwrap();
        prop_assert_eq!(b_minus.to_btree(), brute.to_btree());
        // Dual of B⁻ taken from above: maximal closed sets containing no member of B⁻.
        let closed: Vec<ElementSet> = subsets(ctx.len()).filter(|f| ctx.is_closed(f)).collect();
        let below: Vec<ElementSet> =
            closed.into_iter().filter(|f| b_minus.iter().all(|b| !b.is_subset(f))).collect();
        let back: std::collections::BTreeSet<ElementSet> = maximal_sets(&below).into_iter().collect();
        prop_assert_eq!(back, b_plus.to_btree());
    }

    #[test]
    fn dual_round_trip_through_gadget(ib in binary_ib(7), seed in any::<u64>()) {
        let ctx = ClosureContext::from_ib(&ib);
        let b_plus = SetFamily::new(ib.ground().clone(), closed_antichain(&ctx, seed)).unwrap();
        let b_minus = dualize_distributive(&ib, &b_plus).unwrap();
        let mi_prime = embed_dualization(&ib, &b_plus).unwrap();
        let dbase_prime = d_base_from_mi(&mi_prime).unwrap();
        let recovered = recover_dual_from_dbase(&dbase_prime, &mi_prime).unwrap();
        prop_assert_eq!(recovered.to_btree(), b_minus.to_btree());
    }

    #[test]
    fn serialization_round_trip(ib in standard_ib(8)) {
        let text = serialize_ib(&ib);
        prop_assert_eq!(parse_ib(&text).unwrap(), ib.canonicalize());
    }
}
