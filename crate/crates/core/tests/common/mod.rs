//! Generators and independent reference implementations shared by the
//! integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::RngExt;
use udmine_core::discovery::{CutKind, CutRecord};
use udmine_core::{
    ActivityLabel, DfgView, Timestamp, UncertainEvent, UncertainLog, UncertainTrace,
};

pub const ALPHABET: [&str; 4] = ["a", "b", "c", "d"];

pub fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn table1() -> UncertainTrace {
    udmine_core::io::parse_compact("<[{a,c},{a,d}],?{a,b},[{a,b},{b,c}],b>", "0").unwrap()
}

pub fn label(s: &str) -> ActivityLabel {
    ActivityLabel::new(s)
}

/// Events with random label sets over the first `labels` letters, random
/// tick intervals and a 30% chance of being indeterminate.
pub fn uncertain_trace(rng: &mut impl RngExt, max_events: usize, labels: usize) -> UncertainTrace {
    let n = rng.random_range(1..=max_events);
    let events = (0..n)
        .map(|i| {
            let mut acts: BTreeSet<&str> = BTreeSet::new();
            while acts.is_empty() {
                for &a in &ALPHABET[..labels] {
                    if rng.random_bool(0.4) {
                        acts.insert(a);
                    }
                }
            }
            let start: u32 = rng.random_range(0..8);
            let width: u32 = if rng.random_bool(0.5) {
                0
            } else {
                rng.random_range(1..4)
            };
            let e = UncertainEvent::new(
                format!("e{}", i + 1),
                acts,
                Timestamp::from_tick(start),
                Timestamp::from_tick(start + width),
            );
            if rng.random_bool(0.3) {
                e.indeterminate()
            } else {
                e
            }
        })
        .collect();
    UncertainTrace::new("t", events)
}

/// A trace with singleton labels, determinate events and strictly
/// increasing precise timestamps.
pub fn certain_trace(labels: &[&str], case_id: &str) -> UncertainTrace {
    let events = labels
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let t = Timestamp::from_tick(i as u32);
            UncertainEvent::new(format!("{case_id}_e{}", i + 1), [a], t, t)
        })
        .collect();
    UncertainTrace::new(case_id, events)
}

pub fn certain_log(
    rng: &mut impl RngExt,
    max_traces: usize,
    max_events: usize,
) -> (UncertainLog, Vec<Vec<&'static str>>) {
    let count = rng.random_range(1..=max_traces);
    let mut words = Vec::new();
    let mut traces = Vec::new();
    for k in 0..count {
        let len = rng.random_range(1..=max_events);
        let word: Vec<&'static str> = (0..len)
            .map(|_| ALPHABET[rng.random_range(0..ALPHABET.len())])
            .collect();
        traces.push(certain_trace(&word, &format!("c{k}")));
        words.push(word);
    }
    (UncertainLog::new(traces), words)
}

/// Edges `i -> j` with `i < j`, each present with probability `p`.
pub fn random_dag(rng: &mut impl RngExt, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    // relabel so that vertex order is not a topological order
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    edges.into_iter().map(|(i, j)| (perm[i], perm[j])).collect()
}

/// Strict reachability by depth-first search from every vertex.
pub fn closure(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut out = vec![vec![false; n]; n];
    for (s, row) in out.iter_mut().enumerate() {
        let mut stack: Vec<usize> = edges.iter().filter(|e| e.0 == s).map(|e| e.1).collect();
        while let Some(v) = stack.pop() {
            if !row[v] {
                row[v] = true;
                stack.extend(edges.iter().filter(|e| e.0 == v).map(|e| e.1));
            }
        }
    }
    out
}

fn component_count(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut count = n;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            count -= 1;
        }
    }
    count
}

/// Indices of edges whose removal increases the number of connected
/// components of the underlying undirected graph.
pub fn bridges_by_removal(n: usize, edges: &[(usize, usize)]) -> BTreeSet<usize> {
    let base = component_count(n, edges);
    (0..edges.len())
        .filter(|&i| {
            let rest: Vec<_> = edges
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &e)| e)
                .collect();
            component_count(n, &rest) > base
        })
        .collect()
}

/// Checks the defining property of a cut on the view it was applied to.
pub fn check_cut(record: &CutRecord) -> Result<(), String> {
    let view = &record.view;
    let acts: Vec<&ActivityLabel> = view.activities.iter().collect();
    let idx = |a: &ActivityLabel| acts.iter().position(|x| *x == a).unwrap();
    let edges: Vec<(usize, usize)> = view.edges.iter().map(|(a, b)| (idx(a), idx(b))).collect();
    let reach = closure(acts.len(), &edges);
    let parts: Vec<Vec<usize>> = record
        .parts
        .iter()
        .map(|p| p.iter().map(idx).collect())
        .collect();

    let covered: BTreeSet<usize> = parts.iter().flatten().copied().collect();
    if covered.len() != acts.len() || parts.iter().map(Vec::len).sum::<usize>() != acts.len() {
        return Err(format!(
            "{:?} parts do not partition the activities",
            record.kind
        ));
    }
    if record.kind != CutKind::Flower && (parts.len() < 2 || parts.iter().any(Vec::is_empty)) {
        return Err(format!(
            "{:?} cut with fewer than two non-empty parts",
            record.kind
        ));
    }
    let pairs = || {
        (0..parts.len())
            .flat_map(|i| (0..parts.len()).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
    };
    match record.kind {
        CutKind::Choice => {
            for (i, j) in pairs() {
                for &x in &parts[i] {
                    for &y in &parts[j] {
                        if edges.contains(&(x, y)) {
                            return Err(format!(
                                "choice cut has an edge {} -> {}",
                                acts[x], acts[y]
                            ));
                        }
                    }
                }
            }
        }
        CutKind::Sequence => {
            for (i, j) in pairs().filter(|(i, j)| i < j) {
                for &x in &parts[i] {
                    for &y in &parts[j] {
                        if !reach[x][y] || reach[y][x] {
                            return Err(format!(
                                "sequence cut violated between {} and {}",
                                acts[x], acts[y]
                            ));
                        }
                    }
                }
            }
        }
        CutKind::Parallel => {
            for (i, j) in pairs() {
                for &x in &parts[i] {
                    for &y in &parts[j] {
                        if !edges.contains(&(x, y)) {
                            return Err(format!(
                                "parallel cut misses edge {} -> {}",
                                acts[x], acts[y]
                            ));
                        }
                    }
                }
            }
            for p in &parts {
                let has = |set: &BTreeSet<ActivityLabel>| p.iter().any(|&x| set.contains(acts[x]));
                if !has(&view.start) || !has(&view.end) {
                    return Err("parallel part without start or end activity".into());
                }
            }
        }
        CutKind::Loop | CutKind::Flower => {}
    }
    Ok(())
}

/// A directly-follows view with random edges and boundary sets.
pub fn random_view(rng: &mut impl RngExt, n: usize, p: f64) -> DfgView {
    let acts: Vec<ActivityLabel> = (0..n).map(|i| label(&format!("x{i}"))).collect();
    let mut edges = BTreeSet::new();
    for a in &acts {
        for b in &acts {
            if rng.random_bool(p) {
                edges.insert((a.clone(), b.clone()));
            }
        }
    }
    let pick = |rng: &mut dyn FnMut() -> bool| -> BTreeSet<ActivityLabel> {
        let mut s: BTreeSet<ActivityLabel> = acts.iter().filter(|_| rng()).cloned().collect();
        if s.is_empty() && !acts.is_empty() {
            s.insert(acts[0].clone());
        }
        s
    };
    let start = pick(&mut || rng.random_bool(0.3));
    let end = pick(&mut || rng.random_bool(0.3));
    DfgView {
        activities: acts.iter().cloned().collect(),
        edges,
        start,
        end,
    }
}
