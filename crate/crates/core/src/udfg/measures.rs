//! Per-trace frequency measures.

use std::collections::{BTreeMap, BTreeSet};

use super::matching::select_pairs;
use crate::graph::{BehaviorGraph, GraphError};
use crate::model::{ActivityLabel, UncertainTrace};

/// An ordered pair of behavior-graph vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidatePair {
    pub from: usize,
    pub to: usize,
}

impl CandidatePair {
    pub fn new(from: usize, to: usize) -> Self {
        CandidatePair { from, to }
    }
}

/// Number of determinate events labeled exactly `{a}`.
pub fn act_freq_min(trace: &UncertainTrace, a: &ActivityLabel) -> u64 {
    trace
        .events
        .iter()
        .filter(|e| e.determinate && e.is_singleton(a))
        .count() as u64
}

/// Number of events that may carry label `a`.
pub fn act_freq_max(trace: &UncertainTrace, a: &ActivityLabel) -> u64 {
    trace.events.iter().filter(|e| e.has_label(a)).count() as u64
}

/// Pairs that certainly realize `a -> b`: singleton labels `{a}` and `{b}` in
/// a strong sequential relationship.
pub fn cand_min(graph: &BehaviorGraph, a: &ActivityLabel, b: &ActivityLabel) -> Vec<CandidatePair> {
    candidates(graph, |v, w| {
        graph.event(v).is_singleton(a) && graph.event(w).is_singleton(b) && graph.strong_seq(v, w)
    })
}

/// Pairs that may realize `a -> b`: labels allow it and the vertices are in a
/// weak sequential relationship.
pub fn cand_max(graph: &BehaviorGraph, a: &ActivityLabel, b: &ActivityLabel) -> Vec<CandidatePair> {
    candidates(graph, |v, w| {
        graph.event(v).has_label(a) && graph.event(w).has_label(b) && graph.weak_seq(v, w)
    })
}

fn candidates(graph: &BehaviorGraph, keep: impl Fn(usize, usize) -> bool) -> Vec<CandidatePair> {
    let n = graph.len();
    (0..n)
        .flat_map(|v| (0..n).map(move |w| (v, w)))
        .filter(|&(v, w)| v != w && keep(v, w))
        .map(|(v, w)| CandidatePair::new(v, w))
        .collect()
}

/// A largest subset of `cands` in which no vertex repeats (`same_activity`
/// false), or no vertex repeats on the same side (`same_activity` true).
pub fn select_max(cands: &[CandidatePair], same_activity: bool) -> Vec<CandidatePair> {
    let raw: Vec<_> = cands.iter().map(|c| (c.from, c.to)).collect();
    select_pairs(&raw, same_activity)
        .into_iter()
        .map(|(v, w)| CandidatePair::new(v, w))
        .collect()
}

pub fn df_freq_min(graph: &BehaviorGraph, a: &ActivityLabel, b: &ActivityLabel) -> u64 {
    select_max(&cand_min(graph, a, b), a == b).len() as u64
}

pub fn df_freq_max(graph: &BehaviorGraph, a: &ActivityLabel, b: &ActivityLabel) -> u64 {
    select_max(&cand_max(graph, a, b), a == b).len() as u64
}

/// A `[min, max]` count pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FreqRange {
    pub min: u64,
    pub max: u64,
}

impl FreqRange {
    pub fn new(min: u64, max: u64) -> Self {
        FreqRange { min, max }
    }
}

impl std::ops::AddAssign for FreqRange {
    fn add_assign(&mut self, rhs: Self) {
        self.min += rhs.min;
        self.max += rhs.max;
    }
}

impl std::fmt::Display for FreqRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.min, self.max)
    }
}

/// Every measure of one trace. Entries with a zero maximum are omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TraceMeasures {
    pub activities: BTreeMap<ActivityLabel, FreqRange>,
    pub relations: BTreeMap<(ActivityLabel, ActivityLabel), FreqRange>,
    pub start: BTreeMap<ActivityLabel, FreqRange>,
    pub end: BTreeMap<ActivityLabel, FreqRange>,
}

impl TraceMeasures {
    pub fn compute(trace: &UncertainTrace) -> Result<Self, GraphError> {
        let graph = BehaviorGraph::build(trace)?;
        Ok(Self::from_graph(trace, &graph))
    }

    pub fn from_graph(trace: &UncertainTrace, graph: &BehaviorGraph) -> Self {
        let labels = trace.activities();
        let n = graph.len();
        let mut strong = vec![vec![false; n]; n];
        let mut weak = vec![vec![false; n]; n];
        for v in 0..n {
            for w in 0..n {
                if v != w {
                    strong[v][w] = graph.strong_seq(v, w);
                    weak[v][w] = graph.weak_seq(v, w);
                }
            }
        }
        let mut m = TraceMeasures::default();
        for a in &labels {
            m.activities.insert(
                a.clone(),
                FreqRange::new(act_freq_min(trace, a), act_freq_max(trace, a)),
            );
        }
        for a in &labels {
            for b in &labels {
                let mut min_c = Vec::new();
                let mut max_c = Vec::new();
                for v in 0..n {
                    for w in 0..n {
                        let (ev, ew) = (graph.event(v), graph.event(w));
                        if weak[v][w] && ev.has_label(a) && ew.has_label(b) {
                            max_c.push(CandidatePair::new(v, w));
                        }
                        if strong[v][w] && ev.is_singleton(a) && ew.is_singleton(b) {
                            min_c.push(CandidatePair::new(v, w));
                        }
                    }
                }
                if max_c.is_empty() {
                    continue;
                }
                let range = FreqRange::new(
                    select_max(&min_c, a == b).len() as u64,
                    select_max(&max_c, a == b).len() as u64,
                );
                m.relations.insert((a.clone(), b.clone()), range);
            }
        }
        m.start = boundary(graph, &graph.sources(), &graph.possible_first());
        m.end = boundary(graph, &graph.sinks(), &graph.possible_last());
        m
    }

    /// Adds `other` into `self`. Commutative and associative.
    pub fn merge(&mut self, other: TraceMeasures) {
        fn add<K: Ord>(into: &mut BTreeMap<K, FreqRange>, from: BTreeMap<K, FreqRange>) {
            for (k, r) in from {
                *into.entry(k).or_default() += r;
            }
        }
        add(&mut self.activities, other.activities);
        add(&mut self.relations, other.relations);
        add(&mut self.start, other.start);
        add(&mut self.end, other.end);
    }
}

/// Start (or end) annotation of one trace: `max` is 1 for labels of vertices
/// that can open (close) a realization, `min` is 1 for labels of determinate
/// singleton source (sink) vertices.
fn boundary(
    graph: &BehaviorGraph,
    certain: &[usize],
    possible: &[usize],
) -> BTreeMap<ActivityLabel, FreqRange> {
    let may: BTreeSet<&ActivityLabel> = possible
        .iter()
        .flat_map(|&v| graph.event(v).activities.iter())
        .collect();
    let must: BTreeSet<&ActivityLabel> = certain
        .iter()
        .map(|&v| graph.event(v))
        .filter(|e| e.determinate && e.activities.len() == 1)
        .flat_map(|e| e.activities.iter())
        .collect();
    may.into_iter()
        .map(|a| (a.clone(), FreqRange::new(u64::from(must.contains(a)), 1)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_compact;

    fn label(s: &str) -> ActivityLabel {
        ActivityLabel::new(s)
    }

    fn table1() -> UncertainTrace {
        parse_compact("<[{a,c},{a,d}],?{a,b},[{a,b},{b,c}],b>", "0").unwrap()
    }

    #[test]
    fn table1_activity_frequencies() {
        let t = table1();
        assert_eq!(
            (act_freq_min(&t, &label("b")), act_freq_max(&t, &label("b"))),
            (1, 4)
        );
        assert_eq!(
            (act_freq_min(&t, &label("a")), act_freq_max(&t, &label("a"))),
            (0, 4)
        );
        assert_eq!(act_freq_max(&t, &label("z")), 0);
    }

    #[test]
    fn certain_repeat() {
        let t = parse_compact("<a,a>", "c").unwrap();
        assert_eq!(
            (act_freq_min(&t, &label("a")), act_freq_max(&t, &label("a"))),
            (2, 2)
        );
    }

    #[test]
    fn table1_candidates() {
        let t = table1();
        let g = BehaviorGraph::build(&t).unwrap();
        let (a, b) = (label("a"), label("b"));
        assert!(cand_min(&g, &a, &b).is_empty());
        assert_eq!(df_freq_min(&g, &a, &b), 0);
        let pairs: Vec<_> = cand_max(&g, &a, &b)
            .iter()
            .map(|c| (c.from + 1, c.to + 1))
            .collect();
        assert_eq!(
            pairs,
            [
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
                (3, 4),
                (3, 5),
                (4, 5),
                (4, 6)
            ]
        );
        // literal definition: e.g. (e1,e3), (e2,e5), (e4,e6)
        assert_eq!(df_freq_max(&g, &a, &b), 3);
    }

    #[test]
    fn certain_pair() {
        let t = parse_compact("<a,b>", "c").unwrap();
        let g = BehaviorGraph::build(&t).unwrap();
        let (a, b) = (label("a"), label("b"));
        assert_eq!(cand_min(&g, &a, &b), [CandidatePair::new(0, 1)]);
        assert_eq!(cand_max(&g, &a, &b), [CandidatePair::new(0, 1)]);
        assert_eq!((df_freq_min(&g, &a, &b), df_freq_max(&g, &a, &b)), (1, 1));
        assert_eq!(df_freq_max(&g, &b, &a), 0);
    }

    #[test]
    fn repeated_activity_counts_twice() {
        let t = parse_compact("<a,a,a>", "c").unwrap();
        let g = BehaviorGraph::build(&t).unwrap();
        let a = label("a");
        assert_eq!((df_freq_min(&g, &a, &a), df_freq_max(&g, &a, &a)), (2, 2));
    }

    #[test]
    fn trace_measures_table1() {
        let m = TraceMeasures::compute(&table1()).unwrap();
        assert_eq!(m.activities[&label("b")], FreqRange::new(1, 4));
        assert_eq!(m.relations[&(label("a"), label("b"))], FreqRange::new(0, 3));
        let starts: Vec<_> = m.start.keys().map(ActivityLabel::as_str).collect();
        assert_eq!(starts, ["a", "c", "d"]);
        assert_eq!(m.end[&label("b")], FreqRange::new(1, 1));
    }
}
