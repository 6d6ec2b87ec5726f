//! Property tests for the invariants the library promises, plus the
//! exhaustive checks that are cheap enough to run on every build.

use std::cmp::Ordering;
use std::collections::HashSet;

use proptest::prelude::*;

use intuit_core::counting::{horn_provable, Family};
use intuit_core::exhaustive::*;
use intuit_core::formula::term_order;
use intuit_core::harness::*;
use intuit_core::lambda::{infer_type, BindingStore, TypeId};
use intuit_core::provers::*;
use intuit_core::random::*;
use intuit_core::transforms::*;
use intuit_core::{parse_formula, Formula};

fn full_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![4 => (0u32..4).prop_map(Formula::atom), 1 => Just(Formula::False)];
    leaf.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

fn impl_formula() -> impl Strategy<Value = Formula> {
    (1usize..12, any::<u64>()).prop_map(|(n, seed)| random_impl_formula(n, &mut seeded(seed)))
}

fn oracle(f: &Formula) -> bool {
    prove_oracle(f, Limits::default()).unwrap().proved
}

fn no_not(f: &Formula) -> bool {
    !f.contains_not()
}

proptest! {
    #[test]
    fn printed_formulas_parse_back(f in full_formula()) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn canonical_numbering_is_idempotent(f in full_formula()) {
        let c = f.canonical();
        prop_assert_eq!(c.canonical(), c);
    }

    #[test]
    fn negation_normal_form_is_equiprovable(f in full_formula()) {
        let g = f.negation_normalize();
        prop_assert!(no_not(&g));
        prop_assert_eq!(oracle(&g), oracle(&f));
    }

    #[test]
    fn implicational_provers_agree_on_random_formulas(f in impl_formula()) {
        let want = oracle(&f);
        for p in ProverId::REAL {
            if let Ok(v) = p.prove(&f, Limits::with_budget(2_000_000)) {
                prop_assert_eq!(v.proved, want, "{} on {}", p, f);
            }
        }
    }

    #[test]
    fn proof_terms_type_check(f in impl_formula()) {
        let v = prove_with_term(&f, Limits::default()).unwrap();
        if let Some(t) = v.proof_term {
            prop_assert!(intuit_core::lambda::type_check(&t, &f), "{} : {}", t, f);
        }
    }

    #[test]
    fn mints_is_flat_linear_and_equiprovable(f in impl_formula()) {
        let m = mints(&f);
        let (premises, goal) = imp_chain_parts(&m);
        prop_assert!(goal.is_atomic());
        prop_assert!(premises.iter().all(|p| mints_clause_shape(p).is_some()));
        // six arrows per source arrow, measured over the size <= 6 sweep
        prop_assert!(m.size() <= 6 * f.size(), "{} arrows from {}", m.size(), f.size());
        // the image has many more atoms; skip it when the oracle runs long
        if let Ok(v) = prove_oracle(&m, Limits::with_budget(200_000)) {
            prop_assert_eq!(v.proved, oracle(&f));
        }
    }

    #[test]
    fn disjunction_free_formulas_split_into_equiprovable_clauses(f in full_formula()) {
        prop_assume!(!f.contains_or());
        let list = to_nested_horn_list(&f).unwrap();
        let all = list.clauses.iter().all(|c| prove_horn_clause(c, Limits::default()).unwrap().proved);
        prop_assert_eq!(all, oracle(&f));
    }

    #[test]
    fn disj_bicond_is_equiprovable(f in full_formula()) {
        prop_assert_eq!(oracle(&to_disj_bicond(&f)), oracle(&f));
    }

    #[test]
    fn seeds_determine_every_generator(seed in any::<u64>()) {
        let draw = |seed| {
            let mut rng = seeded(seed);
            (
                random_impl_formula(15, &mut rng),
                random_set_partition(9, &mut rng),
                random_sk_tree(8, &mut rng),
                random_typed_nf(8, DEFAULT_RETRIES, &mut rng).unwrap(),
            )
        };
        prop_assert_eq!(draw(seed), draw(seed));
    }

    #[test]
    fn typed_nf_sizes_stay_in_window(target in 1usize..30, seed in any::<u64>()) {
        let (lo, hi) = typed_nf_window(target);
        let (t, ty) = random_typed_nf(target, DEFAULT_RETRIES, &mut seeded(seed)).unwrap();
        prop_assert!((lo..=hi).contains(&t.size()));
        prop_assert_eq!(infer_type(&t).unwrap(), ty);
    }

    #[test]
    fn failed_unification_rolls_back(ops in prop::collection::vec((0usize..64, 0usize..64, any::<bool>()), 1..60)) {
        let mut store = BindingStore::new();
        let mut ids: Vec<TypeId> = (0..4).map(|_| store.fresh()).collect();
        for (i, j, build) in ops {
            let (a, b) = (ids[i % ids.len()], ids[j % ids.len()]);
            if build {
                let t = store.arrow(a, b);
                ids.push(t);
                continue;
            }
            let before = store.clone();
            if !store.unify(a, b) {
                prop_assert_eq!(&store, &before);
            }
            // resolving must terminate: no binding may be cyclic
            for &t in &ids {
                store.resolve(t);
            }
        }
    }
}

#[test]
fn streams_have_closed_form_lengths_and_no_duplicates() {
    const CATALAN: [usize; 8] = [1, 1, 2, 5, 14, 42, 132, 429];
    const BELL: [usize; 8] = [1, 1, 2, 5, 15, 52, 203, 877];
    for n in 0..7 {
        let sk: HashSet<Formula> = gen_impl_skeletons(n).collect();
        assert_eq!(sk.len(), CATALAN[n]);
        let parts: HashSet<String> = gen_set_partitions(n).map(|p| p.to_string()).collect();
        assert_eq!(parts.len(), BELL[n]);
        let horn: HashSet<_> = gen_horn_skeletons(n).collect();
        assert_eq!(horn.len(), CATALAN[n]);
    }
    for n in 0..5 {
        let all: HashSet<Formula> = gen_impl_formulas(n).collect();
        assert_eq!(all.len(), CATALAN[n] * BELL[n + 1]);
    }
}

#[test]
fn term_order_is_strict_and_total_on_small_skeletons() {
    let mut all: Vec<_> = (0..=6).flat_map(gen_horn_skeletons).collect();
    all.sort_by(term_order);
    for (i, a) in all.iter().enumerate() {
        assert_eq!(term_order(a, a), Ordering::Equal);
        for b in &all[i + 1..] {
            assert_eq!(term_order(a, b), Ordering::Less, "{a} vs {b}");
            assert_eq!(term_order(b, a), Ordering::Greater);
        }
    }
}

#[test]
fn tautologies_are_proved_by_every_prover() {
    for n in 0..=7 {
        for f in gen_impl_tautologies(n) {
            for p in ProverId::REAL {
                assert!(p.prove(&f, Limits::default()).unwrap().proved, "{p} on {f}");
            }
        }
    }
}

#[test]
fn uninhabitable_trees_have_no_provable_labelling() {
    for n in 0..=6 {
        for t in gen_uninhabitable_trees(n, &horn_provable) {
            for p in gen_set_partitions(n + 1) {
                let f = from_horn(&t.label_leaves(&p.rgs));
                assert!(!oracle(&f), "{f}");
            }
        }
    }
}

#[test]
fn typed_normal_forms_infer_their_types() {
    for n in 0..=8 {
        for (t, ty) in gen_typed_nf(n) {
            assert_eq!(infer_type(&t).unwrap(), ty, "{t}");
        }
    }
}

#[test]
fn discrepancy_set_ignores_worker_count() {
    let gold = Builtin::new(ProverId::Oracle);
    let suspect = Builtin::new(ProverId::BadRandom(5));
    let lines = |jobs| {
        with_jobs(Some(jobs), || {
            gold_test_family(Family::ImplAll, 3, &gold, &suspect)
        })
        .discrepancies
        .iter()
        .map(Discrepancy::to_json_line)
        .collect::<Vec<_>>()
    };
    assert_eq!(lines(1), lines(3));
    let seeded_run = || {
        random_gold_test(9, 200, 17, &gold, &suspect)
            .discrepancies
            .iter()
            .map(Discrepancy::to_json_line)
            .collect::<Vec<_>>()
    };
    assert_eq!(seeded_run(), seeded_run());
}

#[test]
fn reported_discrepancies_reclassify_identically() {
    let gold = Builtin::new(ProverId::Oracle);
    let suspect = Builtin::new(ProverId::BadRandom(2));
    for d in gold_test_family(Family::ImplAll, 3, &gold, &suspect).discrepancies {
        let again = DiscrepancyKind::classify(suspect.decide(&d.formula), gold.decide(&d.formula));
        assert_eq!(again, Some(d.kind));
    }
}
