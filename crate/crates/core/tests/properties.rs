#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use fixcat::cat::FinCategory;
use fixcat::format::{self, Document};
use fixcat::laws::{run_suite, SuiteConfig};
use fixcat::poly::{bisimilar, bisimulation_blocks, mtype_unfold, wtype_enumerate, CoalgebraSystem, Polynomial};
use fixcat::poset::{
    bifree_star, fixpoints, kleene_star, monotone_maps, pointed_posets_up_to_iso, MonotoneMap, PointedPoset,
};
use fixcat::rel::{mrel_compose, mrel_star, tree_star, FinSet, Multiset, MultisetRel};

fn posets() -> Vec<Arc<PointedPoset>> {
    (1..=4).flat_map(pointed_posets_up_to_iso).map(Arc::new).collect()
}

/// A monotone endomap on one of the small pointed posets, picked by index.
fn endomap() -> impl Strategy<Value = MonotoneMap> {
    (any::<prop::sample::Index>(), any::<prop::sample::Index>()).prop_map(|(p, f)| {
        let all = posets();
        let p = &all[p.index(all.len())];
        let maps = monotone_maps(p, p, false);
        maps[f.index(maps.len())].clone()
    })
}

/// A pair `f: A → B`, `g: B → A` of monotone maps.
fn opposite_pair() -> impl Strategy<Value = (MonotoneMap, MonotoneMap)> {
    (
        any::<prop::sample::Index>(),
        any::<prop::sample::Index>(),
        any::<prop::sample::Index>(),
        any::<prop::sample::Index>(),
    )
        .prop_map(|(a, b, f, g)| {
            let all = posets();
            let (a, b) = (&all[a.index(all.len())], &all[b.index(all.len())]);
            let fs = monotone_maps(a, b, false);
            let gs = monotone_maps(b, a, false);
            (fs[f.index(fs.len())].clone(), gs[g.index(gs.len())].clone())
        })
}

/// An endorelation on `n ≤ 3` letters with sources of size ≤ 2.
fn endorelation() -> impl Strategy<Value = MultisetRel> {
    (1usize..=3).prop_flat_map(|n| {
        let pair = (prop::collection::vec(0..n, 0..=2), 0..n);
        prop::collection::vec(pair, 0..6).prop_map(move |pairs| {
            let a = Arc::new(FinSet::letters(n));
            let pairs = pairs.into_iter().map(|(xs, y)| (Multiset::from_elems(&xs), y));
            MultisetRel::new(a.clone(), a, pairs).unwrap()
        })
    })
}

fn least_closed(f: &MultisetRel) -> BTreeSet<usize> {
    // brute force over every subset
    let n = f.source.len();
    let closed =
        |s: &BTreeSet<usize>| f.pairs.iter().all(|(m, y)| !m.support().all(|x| s.contains(&x)) || s.contains(y));
    (0u32..1 << n)
        .map(|bits| (0..n).filter(|i| bits >> i & 1 == 1).collect::<BTreeSet<usize>>())
        .filter(closed)
        .min_by_key(BTreeSet::len)
        .unwrap()
}

fn coalgebra(arities: Vec<usize>) -> impl Strategy<Value = CoalgebraSystem> {
    let poly =
        Polynomial::over_one(&arities.iter().enumerate().map(|(k, &a)| (format!("c{k}"), a)).collect::<Vec<_>>());
    (1usize..=5).prop_flat_map(move |n| {
        let poly = poly.clone();
        let arities = arities.clone();
        let row = (0..arities.len()).prop_flat_map(move |b| {
            let k = arities[b];
            prop::collection::vec(0..n, k).prop_map(move |succ| (b, succ))
        });
        prop::collection::vec(row, n).prop_map(move |rows| {
            let states = (0..n).map(|i| format!("x{i}")).collect();
            CoalgebraSystem::new(poly.clone(), states, rows).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn kleene_star_is_the_least_fixpoint(f in endomap()) {
        let x = kleene_star(&f);
        prop_assert_eq!(f.apply(x), x);
        for y in fixpoints(&f) {
            prop_assert!(f.source.leq(x, y));
        }
    }

    #[test]
    fn bifree_star_agrees_with_kleene(f in endomap()) {
        prop_assert_eq!(bifree_star(&f), kleene_star(&f));
    }

    #[test]
    fn rolling_rule((f, g) in opposite_pair()) {
        // (f ∘ g)* = f((g ∘ f)*)
        let fg = f.after(&g).unwrap();
        let gf = g.after(&f).unwrap();
        prop_assert_eq!(kleene_star(&fg), f.apply(kleene_star(&gf)));
    }

    #[test]
    fn strict_maps_carry_stars((s, _) in opposite_pair(), pick in any::<prop::sample::Index>()) {
        // uniformity: s ∘ h = g ∘ s with s strict gives s(h*) = g*
        prop_assume!(s.preserves_bottom());
        let hs = monotone_maps(&s.source, &s.source, false);
        let h = &hs[pick.index(hs.len())];
        let sh = s.after(h).unwrap();
        for g in monotone_maps(&s.target, &s.target, false) {
            if g.after(&s).unwrap().assignment == sh.assignment {
                prop_assert_eq!(s.apply(kleene_star(h)), kleene_star(&g));
            }
        }
    }

    #[test]
    fn closure_star_is_the_least_closed_set(f in endorelation()) {
        prop_assert_eq!(mrel_star(&f), least_closed(&f));
    }

    #[test]
    fn witness_trees_find_the_same_star(f in endorelation()) {
        let t = tree_star(&f, f.source.len() + 1);
        prop_assert!(t.stabilized);
        prop_assert_eq!(&t.elements, &mrel_star(&f));
        for (x, w) in &t.witnesses {
            prop_assert_eq!(w.label(), *x);
            prop_assert!(w.is_valid_for(&f));
        }
    }

    #[test]
    fn rel_rolling_rule(f in endorelation(), g in endorelation()) {
        if f.source.len() == g.source.len() {
            let fg = mrel_compose(&f, &g).unwrap();
            let gf = mrel_compose(&g, &f).unwrap();
            prop_assert_eq!(mrel_star(&fg), f.apply(&mrel_star(&gf)));
        }
    }

    #[test]
    fn w_counts_follow_the_arity_recurrence(arities in prop::collection::vec(0usize..=2, 1..=3)) {
        let named: Vec<(String, usize)> = arities.iter().enumerate().map(|(k, &a)| (format!("c{k}"), a)).collect();
        let p = Polynomial::over_one(&named);
        let counts = wtype_enumerate(&p, 3).unwrap().counts;
        prop_assert_eq!(counts[0], 0);
        for d in 0..3 {
            let next: usize = arities.iter().map(|&a| counts[d].pow(a as u32)).sum();
            prop_assert_eq!(counts[d + 1], next);
        }
    }

    #[test]
    fn bisimilarity_matches_unfoldings(c in coalgebra(vec![0, 1, 2])) {
        let n = c.states.len();
        let blocks = bisimulation_blocks(&[&c]).unwrap();
        prop_assert_eq!(blocks[0].len(), n);
        for x in 0..n {
            for y in 0..n {
                let same = bisimilar(&c, &c, x, y).unwrap();
                prop_assert_eq!(same, bisimilar(&c, &c, y, x).unwrap());
                let unfold = mtype_unfold(&c, x, n + 1) == mtype_unfold(&c, y, n + 1);
                prop_assert_eq!(same, unfold);
                let together = blocks[0][x] == blocks[0][y];
                prop_assert_eq!(same, together);
            }
        }
    }

    #[test]
    fn single_successor_states_are_all_bisimilar(c in coalgebra(vec![1])) {
        let n = c.states.len();
        for x in 0..n {
            for y in 0..n {
                prop_assert!(bisimilar(&c, &c, x, y).unwrap());
            }
        }
    }

    #[test]
    fn thin_categories_from_orders_are_valid(n in 1usize..=4, bits in any::<u8>()) {
        // upward edges chosen by `bits`, then closed reflexively and transitively
        let mut leq = vec![vec![false; n]; n];
        let mut k = 0;
        for i in 0..n {
            leq[i][i] = true;
            for j in i + 1..n {
                leq[i][j] = bits >> (k % 8) & 1 == 1;
                k += 1;
            }
        }
        for m in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][m] && leq[m][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let c = FinCategory::thin(&names, &leq);
        prop_assert!(c.is_valid(), "{:?}", c.validate());
        let arrows = leq.iter().flatten().filter(|&&b| b).count();
        prop_assert_eq!(c.arrow_count(), arrows);
        let back = format::category_from(&format::category_doc(&c)).unwrap();
        prop_assert!(back.is_valid());
        prop_assert_eq!(back.arrow_count(), arrows);
    }

    #[test]
    fn poset_documents_round_trip(p in 1usize..=4, pick in any::<prop::sample::Index>()) {
        let all = pointed_posets_up_to_iso(p);
        let poset = all[pick.index(all.len())].clone();
        let doc = Document::Poset(format::poset_doc(&poset));
        let text = format::print(&doc);
        prop_assert_eq!(format::parse(&text).unwrap(), doc.clone());
        prop_assert_eq!(format::canonicalize(&doc).unwrap(), doc);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn suite_passes_for_any_seed(seed in any::<u64>()) {
        let config = SuiteConfig {
            models: ["poset", "rel", "scott"].map(String::from).to_vec(),
            exhaustive_max: 2,
            random_draws: 40,
            product_draws: 20,
            seed,
            ..SuiteConfig::default()
        };
        let report = run_suite(&config).unwrap();
        let failures: Vec<_> = report.failures().map(|r| (&r.model, &r.law, &r.counterexample)).collect();
        prop_assert!(failures.is_empty(), "{:?}", failures);
    }

    #[test]
    fn broken_star_always_fails_fix(seed in any::<u64>()) {
        let config = SuiteConfig {
            models: vec!["poset-broken".into()],
            exhaustive_max: 2,
            random_draws: 40,
            seed,
            ..SuiteConfig::default()
        };
        let report = run_suite(&config).unwrap();
        let fix = report.reports.iter().find(|r| r.law == "fix").unwrap();
        prop_assert!(fix.counterexample.is_some());
    }
}
