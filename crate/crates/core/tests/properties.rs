//! Randomized invariants: de Morgan duality, negation involution,
//! canonicalization, the three-way validity agreement, budget monotonicity,
//! and the view/partition/nest laws over random interaction sequences.

use proptest::prelude::*;

use debate_core::formula::{
    canonicalize, eval_finite, is_classically_valid, is_intuitionistically_valid, negate, Budget,
    Formula, Validity3,
};
use debate_core::pointer::{self, nest_check};

fn arb_formula() -> impl proptest::strategy::Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::one()),
        Just(Formula::zero()),
        (any::<bool>(), 0u64..50).prop_map(|(v, k)| Formula::atom(
            v,
            format!("p{k}"),
            format!("~p{k}")
        )),
    ];
    leaf.prop_recursive(4, 64, 4, |inner| {
        (any::<bool>(), prop::collection::vec(inner, 0..4)).prop_map(|(conj, children)| {
            if conj {
                Formula::conj(children)
            } else {
                Formula::disj(children)
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn de_morgan_duality(a in arb_formula()) {
        prop_assert_eq!(eval_finite(&negate(&a)).unwrap(), !eval_finite(&a).unwrap());
    }

    #[test]
    fn negation_is_an_involution_on_canonical_formulas(a in arb_formula()) {
        let c = canonicalize(&a);
        prop_assert_eq!(negate(&negate(&c)), c);
    }

    #[test]
    fn canonicalization_preserves_truth(a in arb_formula()) {
        prop_assert_eq!(eval_finite(&canonicalize(&a)).unwrap(), eval_finite(&a).unwrap());
        // And is idempotent up to evaluation and alternation.
        let c = canonicalize(&a);
        let cc = canonicalize(&c);
        prop_assert_eq!(&cc, &c);
    }

    #[test]
    fn canonical_formulas_alternate(a in arb_formula()) {
        fn check(f: &Formula) -> bool {
            let c = f.children();
            c.head.iter().all(|ch| {
                (ch.is_leaf() || ch.kind() != f.kind()) && check(ch)
            })
        }
        prop_assert!(check(&canonicalize(&a)));
    }

    #[test]
    fn validities_agree_with_evaluation(a in arb_formula()) {
        let b = Budget::default();
        let truth = eval_finite(&a).unwrap();
        let want = if truth { Validity3::Valid } else { Validity3::Invalid };
        prop_assert_eq!(is_intuitionistically_valid(&a, b), want);
        prop_assert_eq!(is_classically_valid(&a, b), want);
    }

    #[test]
    fn conclusive_answers_are_budget_monotone(a in arb_formula()) {
        let small = Budget { fuel: 40, width: 4 };
        let big = Budget::default();
        for verdict in [
            (is_intuitionistically_valid(&a, small), is_intuitionistically_valid(&a, big)),
            (is_classically_valid(&a, small), is_classically_valid(&a, big)),
        ] {
            match verdict {
                (Validity3::Unknown, _) => {}
                (v_small, v_big) => prop_assert_eq!(v_small, v_big),
            }
        }
    }

    #[test]
    fn sexpr_round_trip(a in arb_formula()) {
        let text = a.to_string();
        let parsed = debate_core::formula::sexpr::parse(&text).unwrap();
        prop_assert_eq!(eval_finite(&parsed).unwrap(), eval_finite(&a).unwrap());
        prop_assert_eq!(parsed.to_string(), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Views satisfy the defining recurrence, partitions tile with view
    /// endpoints, and definite segments nest.
    #[test]
    fn pointer_laws_on_random_sequences(seed in any::<u64>(), len in 2usize..120) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let seq = pointer::random_valid_seq(&mut rng, len);
        seq.validate().unwrap();
        for n in 1..seq.positions() {
            // Recurrence: V(n+1) = {n} ∪ V(phi(n)).
            let mut expect = vec![n];
            if let Some(p) = seq.phi_of(n) {
                expect.extend(seq.view(p).unwrap());
            }
            prop_assert_eq!(seq.view(n + 1).unwrap(), expect);
            // Partition endpoints are the view.
            let segs = seq.segments_partition(n).unwrap();
            let hi: Vec<usize> = segs.iter().map(|s| s.hi).collect();
            prop_assert_eq!(hi, seq.view(n).unwrap());
        }
        let definite = seq.definite_segments(seq.positions());
        prop_assert!(nest_check(&definite.segments).is_ok());
    }

    /// Chains found by exhaustive search satisfy their defining recurrence,
    /// and tagged ones tile an initial interval.
    #[test]
    fn brute_chains_recheck(seed in any::<u64>(), len in 2usize..60) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let seq = pointer::random_valid_seq(&mut rng, len);
        for chain in pointer::brute_force_chains(&seq, seq.positions()) {
            for w in chain.elements.windows(2) {
                prop_assert_eq!(seq.phi_of(w[1]).unwrap(), w[0] + 1);
            }
            if let Some(m) = chain.partitions_upto {
                let mut covered = vec![false; m];
                for &e in &chain.elements {
                    let lo = if e == 0 { 0 } else { seq.phi_of(e).unwrap() };
                    for i in lo..=e {
                        prop_assert!(!covered[i]);
                        covered[i] = true;
                    }
                }
                prop_assert!(covered.into_iter().all(|c| c));
            }
        }
    }
}

/// Random lassos: whenever the ascending-chain analysis succeeds, the chain
/// rechecks against the defining recurrence and exhaustive search over
/// unrollings finds no second full chain.
#[test]
fn omega_chain_soundness_on_random_lassos() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20_240_817);
    let mut analyzed = 0;
    for _ in 0..4000 {
        let Some(lasso) = pointer::random_valid_lasso(&mut rng, 8) else { continue };
        let Ok(chain) = pointer::omega_chain(&lasso) else { continue };
        analyzed += 1;
        let horizon = lasso.cycle_start() + 12 * lasso.period();
        let elems = chain.elements_below(horizon);
        for w in elems.windows(2) {
            assert_eq!(lasso.phi_of(w[1]).unwrap(), w[0] + 1);
        }
        // Segments tile an initial interval at every boundary they reach.
        let mut covered = vec![false; horizon];
        let mut max_hi = 0;
        for &e in &elems {
            let lo = if e == 0 { 0 } else { lasso.phi_of(e).unwrap() };
            for i in lo..=e {
                assert!(!covered[i], "overlap at {i}");
                covered[i] = true;
            }
            max_hi = max_hi.max(e);
        }
        assert!(covered[..=max_hi].iter().all(|&c| c), "gap below {max_hi}");
        // Exhaustive search agrees no second full chain runs on a different
        // course: every survivor of a long unrolling, truncated below a
        // two-period end margin (whose branches a finite window cannot
        // decide), is a prefix of the analyzed chain, and the analyzed chain
        // itself survives.
        let window = lasso.cycle_start() + 12 * lasso.period();
        let margin = window - 2 * lasso.period();
        let unrolled = lasso.unroll(window);
        let survivors: Vec<Vec<usize>> = pointer::brute_force_chains(&unrolled, window)
            .into_iter()
            .filter(|c| c.partitions_upto.is_some())
            .filter(|c| c.elements.last().copied().unwrap_or(0) + 2 * lasso.period() >= window)
            .map(|c| c.elements)
            .collect();
        let expect = chain.elements_below(window);
        let expect_cut: Vec<usize> =
            expect.iter().copied().filter(|&e| e < margin).collect();
        let mut matched = false;
        for s in &survivors {
            let cut: Vec<usize> = s.iter().copied().filter(|&e| e < margin).collect();
            assert!(
                expect_cut.starts_with(&cut) || cut.starts_with(&expect_cut),
                "second full chain {s:?} against {expect:?}"
            );
            matched |= cut == expect_cut;
        }
        assert!(matched, "the analyzed chain must survive exhaustively");
    }
    assert!(analyzed >= 50, "too few analyzable lassos: {analyzed}");
}
