mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use udmine_core::oracle::{activity_bounds, classic_dfg, exhaustive_selection, relation_bounds};
use udmine_core::udfg::{
    act_freq_max, act_freq_min, build_udfg_parallel, df_freq_max, df_freq_min, select_max,
    CandidatePair, Rational,
};
use udmine_core::{build_behavior_graph, build_udfg, slice, SliceParams, UncertainLog};

fn candidates() -> impl Strategy<Value = Vec<CandidatePair>> {
    proptest::collection::btree_set((0usize..8, 0usize..8), 0..=12).prop_map(|s| {
        s.into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| CandidatePair::new(a, b))
            .collect()
    })
}

fn ratio() -> impl Strategy<Value = Rational> {
    (0u64..=10).prop_map(|k| Rational::new(k, 10))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bounds_agree_with_realizations(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = common::uncertain_trace(&mut rng, 6, 3);
        let g = build_behavior_graph(&t).unwrap();
        let universe = t.activities();
        for a in &universe {
            prop_assert_eq!(activity_bounds(&t, a, 10).unwrap(), (act_freq_min(&t, a), act_freq_max(&t, a)));
            for b in &universe {
                let (lo, hi) = (df_freq_min(&g, a, b), df_freq_max(&g, a, b));
                prop_assert!(lo <= hi);
                prop_assert!(relation_bounds(&t, a, b, 10).unwrap().1 <= hi);
            }
        }
    }

    #[test]
    fn selection_is_maximum_and_valid(cands in candidates(), same in any::<bool>()) {
        let picked = select_max(&cands, same);
        prop_assert_eq!(picked.len(), exhaustive_selection(&cands, same, 20).unwrap());
        let mut firsts = BTreeSet::new();
        let mut seconds = BTreeSet::new();
        let mut all = BTreeSet::new();
        for p in &picked {
            prop_assert!(cands.contains(p));
            prop_assert!(firsts.insert(p.from) && seconds.insert(p.to));
            if !same {
                prop_assert!(all.insert(p.from) && all.insert(p.to));
            }
        }
    }

    #[test]
    fn certain_logs_collapse(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (log, words) = common::certain_log(&mut rng, 4, 8);
        let u = build_udfg(&log).unwrap();
        let classic = classic_dfg(&words);
        prop_assert_eq!(u.nodes.len(), classic.activities.len());
        for (a, r) in &u.nodes {
            prop_assert_eq!((r.min, r.max), (classic.activities[a], classic.activities[a]));
        }
        prop_assert_eq!(u.arcs.len(), classic.relations.len());
        for (k, r) in &u.arcs {
            prop_assert_eq!((r.min, r.max), (classic.relations[k], classic.relations[k]));
        }
    }

    #[test]
    fn parallel_build_matches_sequential(seeds in proptest::collection::vec(any::<u64>(), 0..6)) {
        let traces = seeds
            .iter()
            .map(|&s| common::uncertain_trace(&mut ChaCha8Rng::seed_from_u64(s), 6, 4))
            .collect();
        let log = UncertainLog::new(traces);
        prop_assert_eq!(build_udfg_parallel(&log).unwrap(), build_udfg(&log).unwrap());
    }

    #[test]
    fn stricter_slices_are_smaller(
        seeds in proptest::collection::vec(any::<u64>(), 1..6),
        (a1, a2, a3, a4) in (ratio(), ratio(), ratio(), ratio()),
        (r1, r2, r3, r4) in (ratio(), ratio(), ratio(), ratio()),
    ) {
        let log = UncertainLog::new(
            seeds.iter().map(|&s| common::uncertain_trace(&mut ChaCha8Rng::seed_from_u64(s), 6, 4)).collect(),
        );
        let u = build_udfg(&log).unwrap();
        let mut act = [a1, a2, a3, a4];
        let mut rel = [r1, r2, r3, r4];
        act.sort();
        rel.sort();
        let [act_lo, act_inner_lo, act_inner_hi, act_hi] = act;
        let [rel_lo, rel_inner_lo, rel_inner_hi, rel_hi] = rel;
        let wide = slice(&u, &SliceParams::new(act_lo, act_hi, rel_lo, rel_hi).unwrap());
        let narrow = slice(&u, &SliceParams::new(act_inner_lo, act_inner_hi, rel_inner_lo, rel_inner_hi).unwrap());
        prop_assert!(narrow.activities.is_subset(&wide.activities));
        prop_assert!(narrow.edges.is_subset(&wide.edges));
        narrow.validate().unwrap();
        wide.validate().unwrap();
    }
}

#[test]
fn unfiltered_slice_keeps_everything() {
    let log = UncertainLog::new(vec![common::table1()]);
    let u = build_udfg(&log).unwrap();
    let view = slice(&u, &SliceParams::default());
    assert_eq!(view.activities.len(), u.nodes.len());
    assert_eq!(view.edges.len(), u.arcs.len());
}
