//! Inductive mining over a directly-follows view.
//!
//! Each recursion step drops self-loops, then tries the cuts in the order
//! exclusive choice, sequence, parallel, loop. The first that applies splits
//! the activities into parts, and every part is mined from its projected
//! view. When no cut applies the step yields a flower model. Parts are ordered
//! by their smallest activity, except sequence parts, which follow the
//! sequence.

use std::collections::BTreeSet;

use super::ProcessTree;
use crate::dfg::{DfgView, ViewError};
use crate::model::ActivityLabel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutKind {
    Choice,
    Sequence,
    Parallel,
    Loop,
    Flower,
}

/// One cut taken during discovery: the view it was applied to and the
/// resulting parts, in child order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutRecord {
    pub kind: CutKind,
    pub view: DfgView,
    pub parts: Vec<BTreeSet<ActivityLabel>>,
}

pub fn discover_tree(view: &DfgView) -> Result<ProcessTree, ViewError> {
    discover_tree_traced(view).map(|(tree, _)| tree)
}

/// Like [`discover_tree`], also returning every cut in the order taken.
pub fn discover_tree_traced(view: &DfgView) -> Result<(ProcessTree, Vec<CutRecord>), ViewError> {
    view.validate()?;
    let mut cuts = Vec::new();
    let tree = mine(view, &mut cuts);
    Ok((tree, cuts))
}

/// Dense working copy of a view; `adj` has no self-loops.
struct Step<'v> {
    view: &'v DfgView,
    acts: Vec<&'v ActivityLabel>,
    adj: Vec<Vec<bool>>,
    start: Vec<bool>,
    end: Vec<bool>,
}

type Part = Vec<usize>;

impl<'v> Step<'v> {
    fn new(view: &'v DfgView) -> Self {
        let acts: Vec<_> = view.activities.iter().collect();
        let n = acts.len();
        let idx = |a: &ActivityLabel| acts.binary_search(&a).expect("validated view");
        let mut adj = vec![vec![false; n]; n];
        for (a, b) in &view.edges {
            let (i, j) = (idx(a), idx(b));
            if i != j {
                adj[i][j] = true;
            }
        }
        let start = acts.iter().map(|a| view.start.contains(*a)).collect();
        let end = acts.iter().map(|a| view.end.contains(*a)).collect();
        Step {
            view,
            acts,
            adj,
            start,
            end,
        }
    }

    fn n(&self) -> usize {
        self.acts.len()
    }

    fn labels(&self, part: &[usize]) -> BTreeSet<ActivityLabel> {
        part.iter().map(|&i| self.acts[i].clone()).collect()
    }

    /// Sub-view on `part`. With `inherit_only`, start/end activities are the
    /// parent's restricted to the part; otherwise activities entered from (or
    /// leaving to) outside the part are added.
    fn project(&self, part: &[usize], inherit_only: bool) -> DfgView {
        let inside: BTreeSet<usize> = part.iter().copied().collect();
        let activities = self.labels(part);
        let edges = self
            .view
            .edges
            .iter()
            .filter(|(a, b)| activities.contains(a) && activities.contains(b))
            .cloned()
            .collect();
        let mut start = BTreeSet::new();
        let mut end = BTreeSet::new();
        for &i in part {
            let entered =
                !inherit_only && (0..self.n()).any(|j| !inside.contains(&j) && self.adj[j][i]);
            let left =
                !inherit_only && (0..self.n()).any(|j| !inside.contains(&j) && self.adj[i][j]);
            if self.start[i] || entered {
                start.insert(self.acts[i].clone());
            }
            if self.end[i] || left {
                end.insert(self.acts[i].clone());
            }
        }
        let mut sub = DfgView {
            activities,
            edges,
            start,
            end,
        };
        fill_boundary(&mut sub);
        sub
    }

    /// Transitive closure (paths of length >= 1) of `adj`.
    fn closure(&self) -> Vec<Vec<bool>> {
        let n = self.n();
        let mut reach = self.adj.clone();
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    let via = reach[k].clone();
                    for (r, v) in reach[i].iter_mut().zip(via) {
                        *r |= v;
                    }
                }
            }
        }
        reach
    }

    fn choice_cut(&self) -> Option<Vec<Part>> {
        let parts = components(self.n(), |i, j| self.adj[i][j] || self.adj[j][i]);
        (parts.len() >= 2).then_some(parts)
    }

    fn sequence_cut(&self) -> Option<Vec<Part>> {
        let n = self.n();
        let reach = self.closure();
        let related = |i: usize, j: usize| reach[i][j] || reach[j][i];
        // strongly connected components, then merge everything pairwise unreachable
        let groups = components(n, |i, j| (reach[i][j] && reach[j][i]) || !related(i, j));
        if groups.len() < 2 {
            return None;
        }
        let before = |g: &Part, h: &Part| {
            g.iter()
                .all(|&x| h.iter().all(|&y| reach[x][y] && !reach[y][x]))
        };
        for (gi, g) in groups.iter().enumerate() {
            for h in &groups[gi + 1..] {
                if !before(g, h) && !before(h, g) {
                    return None;
                }
            }
        }
        let mut ordered = groups.clone();
        ordered.sort_by_key(|g| groups.iter().filter(|h| *h != g && before(h, g)).count());
        Some(ordered)
    }

    fn parallel_cut(&self) -> Option<Vec<Part>> {
        let finest = components(self.n(), |i, j| !(self.adj[i][j] && self.adj[j][i]));
        if finest.len() < 2 {
            return None;
        }
        let complete =
            |p: &Part| p.iter().any(|&i| self.start[i]) && p.iter().any(|&i| self.end[i]);
        let (mut good, bad): (Vec<Part>, Vec<Part>) = finest.into_iter().partition(complete);
        if good.is_empty() {
            return None;
        }
        for p in bad {
            good[0].extend(p);
        }
        good[0].sort_unstable();
        (good.len() >= 2).then_some(good)
    }

    fn loop_cut(&self) -> Option<Vec<Part>> {
        let n = self.n();
        let mut body: BTreeSet<usize> = (0..n).filter(|&i| self.start[i] || self.end[i]).collect();
        if body.is_empty() {
            return None;
        }
        loop {
            let rest: Vec<usize> = (0..n).filter(|i| !body.contains(i)).collect();
            if rest.is_empty() {
                return None;
            }
            let redo: Vec<Part> = components(rest.len(), |i, j| {
                self.adj[rest[i]][rest[j]] || self.adj[rest[j]][rest[i]]
            })
            .into_iter()
            .map(|c| c.into_iter().map(|i| rest[i]).collect())
            .collect();
            let invalid: Vec<&Part> = redo.iter().filter(|c| !self.valid_redo(&body, c)).collect();
            if invalid.is_empty() {
                let mut parts = vec![body.into_iter().collect::<Part>()];
                parts.extend(redo);
                return Some(parts);
            }
            for c in invalid {
                body.extend(c.iter().copied());
            }
        }
    }

    /// A redo part is entered only from end activities (all of them) and
    /// left only to start activities (all of them).
    fn valid_redo(&self, body: &BTreeSet<usize>, part: &[usize]) -> bool {
        let ends: Vec<usize> = body.iter().copied().filter(|&i| self.end[i]).collect();
        let starts: Vec<usize> = body.iter().copied().filter(|&i| self.start[i]).collect();
        let mut entered = false;
        let mut left = false;
        for &c in part {
            for &b in body {
                if self.adj[b][c] {
                    if !self.end[b] {
                        return false;
                    }
                    if !ends.iter().all(|&e| self.adj[e][c]) {
                        return false;
                    }
                    entered = true;
                }
                if self.adj[c][b] {
                    if !self.start[b] {
                        return false;
                    }
                    if !starts.iter().all(|&s| self.adj[c][s]) {
                        return false;
                    }
                    left = true;
                }
            }
        }
        entered && left
    }
}

/// Connected components of the undirected relation `linked`, each sorted,
/// ordered by smallest member.
fn components(n: usize, linked: impl Fn(usize, usize) -> bool) -> Vec<Part> {
    let mut comp = vec![usize::MAX; n];
    let mut parts = Vec::new();
    for root in 0..n {
        if comp[root] != usize::MAX {
            continue;
        }
        let id = parts.len();
        comp[root] = id;
        let mut part = vec![root];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for (w, c) in comp.iter_mut().enumerate() {
                if *c == usize::MAX && linked(v, w) {
                    *c = id;
                    part.push(w);
                    stack.push(w);
                }
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    parts
}

/// Projected views can lose every start or end activity; fall back to the
/// activities without incoming (outgoing) edges, then to all of them.
fn fill_boundary(view: &mut DfgView) {
    if view.activities.is_empty() {
        return;
    }
    let open = |incoming: bool| -> BTreeSet<ActivityLabel> {
        let found: BTreeSet<_> = view
            .activities
            .iter()
            .filter(|x| {
                !view
                    .edges
                    .iter()
                    .any(|(a, b)| a != b && if incoming { b == *x } else { a == *x })
            })
            .cloned()
            .collect();
        if found.is_empty() {
            view.activities.clone()
        } else {
            found
        }
    };
    if view.start.is_empty() {
        view.start = open(true);
    }
    if view.end.is_empty() {
        view.end = open(false);
    }
}

fn mine(view: &DfgView, cuts: &mut Vec<CutRecord>) -> ProcessTree {
    let step = Step::new(view);
    match step.n() {
        0 => return ProcessTree::Silent,
        1 => {
            let a = step.acts[0];
            let leaf = ProcessTree::Activity(a.clone());
            return if view.has_edge(a, a) {
                ProcessTree::Loop(vec![leaf, ProcessTree::Silent])
            } else {
                leaf
            };
        }
        _ => {}
    }
    let mut record = |kind, parts: &[Part]| {
        cuts.push(CutRecord {
            kind,
            view: view.clone(),
            parts: parts.iter().map(|p| step.labels(p)).collect(),
        });
    };

    if let Some(parts) = step.choice_cut() {
        record(CutKind::Choice, &parts);
        let children = parts
            .iter()
            .map(|p| mine(&step.project(p, true), cuts))
            .collect();
        return ProcessTree::Choice(children);
    }
    if let Some(parts) = step.sequence_cut() {
        record(CutKind::Sequence, &parts);
        let mut children = Vec::with_capacity(parts.len());
        for (k, p) in parts.iter().enumerate() {
            let child = mine(&step.project(p, false), cuts);
            children.push(if skippable(&step, &parts, k) {
                optional(child)
            } else {
                child
            });
        }
        return ProcessTree::Sequence(children);
    }
    if let Some(parts) = step.parallel_cut() {
        record(CutKind::Parallel, &parts);
        let children = parts
            .iter()
            .map(|p| mine(&step.project(p, true), cuts))
            .collect();
        return ProcessTree::Parallel(children);
    }
    if let Some(parts) = step.loop_cut() {
        record(CutKind::Loop, &parts);
        let children = parts
            .iter()
            .map(|p| mine(&step.project(p, false), cuts))
            .collect();
        return ProcessTree::Loop(children);
    }
    let all: Part = (0..step.n()).collect();
    record(CutKind::Flower, &[all]);
    let mut children = vec![ProcessTree::Silent];
    children.extend(step.acts.iter().map(|&a| ProcessTree::Activity(a.clone())));
    ProcessTree::Loop(children)
}

fn optional(tree: ProcessTree) -> ProcessTree {
    match tree {
        ProcessTree::Silent => ProcessTree::Silent,
        ProcessTree::Choice(mut children) => {
            if !children.contains(&ProcessTree::Silent) {
                children.push(ProcessTree::Silent);
            }
            ProcessTree::Choice(children)
        }
        other => ProcessTree::Choice(vec![other, ProcessTree::Silent]),
    }
}

/// Part `k` of a sequence cut can be skipped if an edge jumps over it, a
/// start activity lies after it, or an end activity lies before it.
fn skippable(step: &Step<'_>, parts: &[Part], k: usize) -> bool {
    let earlier: Vec<usize> = parts[..k].iter().flatten().copied().collect();
    let later: Vec<usize> = parts[k + 1..].iter().flatten().copied().collect();
    later.iter().any(|&j| step.start[j])
        || earlier.iter().any(|&i| step.end[i])
        || earlier
            .iter()
            .any(|&i| later.iter().any(|&j| step.adj[i][j]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mine_str(acts: &[&str], edges: &[(&str, &str)], start: &[&str], end: &[&str]) -> String {
        discover_tree(&DfgView::from_parts(acts, edges, start, end).unwrap())
            .unwrap()
            .to_string()
    }

    #[test]
    fn base_cases() {
        assert_eq!(mine_str(&[], &[], &[], &[]), "tau");
        assert_eq!(mine_str(&["a"], &[], &["a"], &["a"]), "'a'");
        assert_eq!(
            mine_str(&["a"], &[("a", "a")], &["a"], &["a"]),
            "loop('a', tau)"
        );
    }

    #[test]
    fn simple_cuts() {
        assert_eq!(
            mine_str(&["a", "b"], &[("a", "b")], &["a"], &["b"]),
            "seq('a', 'b')"
        );
        assert_eq!(
            mine_str(&["a", "b"], &[], &["a", "b"], &["a", "b"]),
            "xor('a', 'b')"
        );
        assert_eq!(
            mine_str(
                &["a", "b"],
                &[("a", "b"), ("b", "a")],
                &["a", "b"],
                &["a", "b"]
            ),
            "and('a', 'b')"
        );
        assert_eq!(
            mine_str(&["a", "b"], &[("a", "b"), ("b", "a")], &["a"], &["a"]),
            "loop('a', 'b')"
        );
    }

    #[test]
    fn skippable_sequence_part() {
        assert_eq!(
            mine_str(
                &["a", "b", "c"],
                &[("a", "b"), ("b", "c"), ("a", "c")],
                &["a"],
                &["c"]
            ),
            "seq('a', xor('b', tau), 'c')"
        );
    }

    #[test]
    fn flower_fallback() {
        let v = DfgView::from_parts(
            &["a", "b", "c"],
            &[("a", "b"), ("b", "c"), ("c", "a")],
            &["a", "b", "c"],
            &["a", "b", "c"],
        )
        .unwrap();
        let (tree, cuts) = discover_tree_traced(&v).unwrap();
        assert_eq!(tree.to_string(), "loop(tau, 'a', 'b', 'c')");
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].kind, CutKind::Flower);
    }

    #[test]
    fn malformed_view_rejected() {
        let mut v = DfgView::from_parts(&["a"], &[], &["a"], &["a"]).unwrap();
        v.edges
            .insert((ActivityLabel::new("a"), ActivityLabel::new("z")));
        assert!(matches!(
            discover_tree(&v),
            Err(ViewError::DanglingEdge(..))
        ));
    }

    #[test]
    fn deterministic() {
        let v = DfgView::from_parts(
            &["a", "b", "c", "d"],
            &[
                ("a", "b"),
                ("a", "c"),
                ("b", "d"),
                ("c", "d"),
                ("b", "c"),
                ("c", "b"),
            ],
            &["a"],
            &["d"],
        )
        .unwrap();
        let first = discover_tree(&v).unwrap();
        assert_eq!(first.to_string(), "seq('a', and('b', 'c'), 'd')");
        assert_eq!(discover_tree(&v).unwrap(), first);
    }
}
