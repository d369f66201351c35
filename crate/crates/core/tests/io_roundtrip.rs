mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use udmine_core::io::{emit_json, parse_compact, parse_compact_log, parse_json};
use udmine_core::{LogError, LogFormat, UncertainLog};

proptest! {
    #[test]
    fn json_round_trip(seed in any::<u64>(), traces in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let log = UncertainLog::new(
            (0..traces)
                .map(|k| {
                    let mut t = common::uncertain_trace(&mut rng, 6, 4);
                    t.case_id = format!("case {k}");
                    for e in &mut t.events {
                        e.id = format!("c{k}_{}", e.id);
                    }
                    t
                })
                .collect(),
        );
        let text = emit_json(&log);
        prop_assert_eq!(parse_json(&text).unwrap(), log);
    }

    #[test]
    fn compact_parser_never_panics(text in "[<>\\[\\]{},?a-c ^0-9\n]{0,40}") {
        let _ = parse_compact_log(&text);
    }
}

#[test]
fn fixtures_parse_in_both_formats() {
    let json = LogFormat::Json
        .parse(&common::fixture("table1.ulog.json"))
        .unwrap();
    let text = LogFormat::Compact
        .parse(&common::fixture("table1.ulog.txt"))
        .unwrap();
    assert_eq!(json.traces[0].len(), 6);
    assert_eq!(text.traces[0].len(), 6);
    let json_labels: Vec<_> = json.traces[0]
        .events
        .iter()
        .map(|e| &e.activities)
        .collect();
    let text_labels: Vec<_> = text.traces[0]
        .events
        .iter()
        .map(|e| &e.activities)
        .collect();
    assert_eq!(json_labels, text_labels);

    let log = LogFormat::Compact
        .parse(&common::fixture("test_log.ulog.txt"))
        .unwrap();
    assert_eq!(log.traces.len(), 100);
    assert_eq!(log.event_count(), 80 * 6 + 15 * 7 + 5 * 7);
}

#[test]
fn emitted_fixture_is_stable() {
    let text = common::fixture("table1.ulog.json");
    assert_eq!(emit_json(&parse_json(&text).unwrap()), text);
}

#[test]
fn errors_carry_positions() {
    match parse_compact("<a,{b,}>", "t") {
        Err(LogError::Grammar { offset, .. }) => assert_eq!(offset, 6),
        other => panic!("unexpected {other:?}"),
    }
    match parse_compact_log("<a>\n<{}>\n") {
        Err(LogError::EmptyLabelSet { line, .. }) => assert_eq!(line, Some(2)),
        other => panic!("unexpected {other:?}"),
    }
    match parse_json("{\"traces\": [ {\"case_id\": \"x\", \"events\": [] } ]}") {
        Err(LogError::Invalid(v)) => assert_eq!(v.len(), 1),
        other => panic!("unexpected {other:?}"),
    }
}
