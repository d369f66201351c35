mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use udmine_core::discovery::discover_tree_traced;
use udmine_core::export::{from_pnml, to_pnml};
use udmine_core::oracle::classic_dfg;
use udmine_core::{build_udfg, discover_tree, slice, tree_to_petri, SliceParams};

/// Every word of length at most `max_len` over `alphabet`.
fn words(alphabet: &[String], max_len: usize) -> Vec<Vec<String>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for a in alphabet {
                let mut longer: Vec<String> = w.clone();
                longer.push(a.clone());
                next.push(longer);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mined_models_are_sound_workflow_nets(seed in any::<u64>(), n in 0usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let view = common::random_view(&mut rng, n, 0.3);
        let (tree, cuts) = discover_tree_traced(&view).unwrap();
        tree.validate().unwrap();
        prop_assert_eq!(tree.activities(), view.activities.clone());
        for cut in &cuts {
            if let Err(e) = common::check_cut(cut) {
                return Err(TestCaseError::fail(e));
            }
        }
        let net = tree_to_petri(&tree);
        net.check_workflow().unwrap();
        prop_assert_eq!(from_pnml(&to_pnml(&net).unwrap()).unwrap(), net);
    }

    #[test]
    fn net_language_matches_tree(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let view = common::random_view(&mut rng, n, 0.4);
        let tree = discover_tree(&view).unwrap();
        let net = tree_to_petri(&tree);
        let alphabet: Vec<String> = view.activities.iter().map(|a| a.to_string()).collect();
        for w in words(&alphabet, 4) {
            prop_assert_eq!(tree.accepts(&w), net.accepts(&w), "{} on {:?}", tree, w);
        }
    }

    #[test]
    fn certain_logs_mine_like_classic_dfgs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (log, words) = common::certain_log(&mut rng, 5, 6);
        let view = slice(&build_udfg(&log).unwrap(), &SliceParams::default());
        let classic = classic_dfg(&words).to_view();
        prop_assert_eq!(&view, &classic);
        prop_assert_eq!(discover_tree(&view).unwrap(), discover_tree(&classic).unwrap());
    }
}

#[test]
fn tree_notation_round_trips_through_mining() {
    let log = udmine_core::io::parse_compact_log(&common::fixture("test_log.ulog.txt")).unwrap();
    let view = slice(&build_udfg(&log).unwrap(), &SliceParams::default());
    let tree = discover_tree(&view).unwrap();
    assert_eq!(
        tree.to_string()
            .parse::<udmine_core::ProcessTree>()
            .unwrap(),
        tree
    );
}
