//! Petri nets and the block-structured translation of process trees.

use std::collections::{BTreeMap, HashSet, VecDeque};

use thiserror::Error;

use super::ProcessTree;
use crate::model::ActivityLabel;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Place {
    pub id: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub id: String,
    /// `None` for silent transitions.
    pub label: Option<ActivityLabel>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeRef {
    Place(usize),
    Transition(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub source: NodeRef,
    pub target: NodeRef,
}

/// Token count per place index; places not listed hold no tokens.
pub type Marking = BTreeMap<usize, u32>;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PetriNet {
    pub places: Vec<Place>,
    pub transitions: Vec<Transition>,
    pub arcs: Vec<Arc>,
    pub initial_marking: Marking,
    pub final_marking: Marking,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("expected exactly one source place, found {0}")]
    SourceCount(usize),
    #[error("expected exactly one sink place, found {0}")]
    SinkCount(usize),
    #[error("{0} is not on a path from the source to the sink")]
    Disconnected(String),
    #[error("arc between two {0}s")]
    BadArc(&'static str),
}

/// Where a workflow net starts and ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkflowShape {
    pub source: usize,
    pub sink: usize,
}

impl PetriNet {
    pub fn node_id(&self, node: NodeRef) -> &str {
        match node {
            NodeRef::Place(p) => &self.places[p].id,
            NodeRef::Transition(t) => &self.transitions[t].id,
        }
    }

    fn add_place(&mut self) -> usize {
        let id = format!("p{}", self.places.len());
        self.places.push(Place { id });
        self.places.len() - 1
    }

    fn add_transition(&mut self, label: Option<ActivityLabel>) -> usize {
        let id = format!("t{}", self.transitions.len());
        self.transitions.push(Transition { id, label });
        self.transitions.len() - 1
    }

    fn connect(&mut self, source: NodeRef, target: NodeRef) {
        self.arcs.push(Arc { source, target });
    }

    /// One place without incoming arcs, one without outgoing arcs, and every
    /// node on some path from the first to the second.
    pub fn check_workflow(&self) -> Result<WorkflowShape, NetError> {
        for arc in &self.arcs {
            match (arc.source, arc.target) {
                (NodeRef::Place(_), NodeRef::Place(_)) => return Err(NetError::BadArc("place")),
                (NodeRef::Transition(_), NodeRef::Transition(_)) => {
                    return Err(NetError::BadArc("transition"))
                }
                _ => {}
            }
        }
        let has_in = |p: usize| self.arcs.iter().any(|a| a.target == NodeRef::Place(p));
        let has_out = |p: usize| self.arcs.iter().any(|a| a.source == NodeRef::Place(p));
        let sources: Vec<usize> = (0..self.places.len()).filter(|&p| !has_in(p)).collect();
        let sinks: Vec<usize> = (0..self.places.len()).filter(|&p| !has_out(p)).collect();
        if sources.len() != 1 {
            return Err(NetError::SourceCount(sources.len()));
        }
        if sinks.len() != 1 {
            return Err(NetError::SinkCount(sinks.len()));
        }
        let (source, sink) = (sources[0], sinks[0]);
        let forward = self.reachable_from(NodeRef::Place(source), false);
        let backward = self.reachable_from(NodeRef::Place(sink), true);
        let nodes = (0..self.places.len())
            .map(NodeRef::Place)
            .chain((0..self.transitions.len()).map(NodeRef::Transition));
        for node in nodes {
            if !forward.contains(&node) || !backward.contains(&node) {
                return Err(NetError::Disconnected(self.node_id(node).to_owned()));
            }
        }
        Ok(WorkflowShape { source, sink })
    }

    fn reachable_from(&self, from: NodeRef, reverse: bool) -> HashSet<NodeRef> {
        let mut seen = HashSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(node) = queue.pop_front() {
            for arc in &self.arcs {
                let (a, b) = if reverse {
                    (arc.target, arc.source)
                } else {
                    (arc.source, arc.target)
                };
                if a == node && seen.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        seen
    }

    /// Token-game replay: can the net fire a sequence whose visible labels
    /// are exactly `word` and reach the final marking? Silent transitions
    /// fire freely.
    pub fn accepts<S: AsRef<str>>(&self, word: &[S]) -> bool {
        const STATE_LIMIT: usize = 1_000_000;
        let n = self.places.len();
        let mut inputs = vec![Vec::new(); self.transitions.len()];
        let mut outputs = vec![Vec::new(); self.transitions.len()];
        for arc in &self.arcs {
            match (arc.source, arc.target) {
                (NodeRef::Place(p), NodeRef::Transition(t)) => inputs[t].push(p),
                (NodeRef::Transition(t), NodeRef::Place(p)) => outputs[t].push(p),
                _ => {}
            }
        }
        let to_vec = |m: &Marking| {
            let mut v = vec![0u32; n];
            for (&p, &k) in m {
                v[p] = k;
            }
            v
        };
        let target = to_vec(&self.final_marking);
        let start = (to_vec(&self.initial_marking), 0usize);
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some((marking, pos)) = queue.pop_front() {
            if pos == word.len() && marking == target {
                return true;
            }
            for (t, tr) in self.transitions.iter().enumerate() {
                if !inputs[t].iter().all(|&p| marking[p] > 0) {
                    continue;
                }
                let next_pos = match &tr.label {
                    None => pos,
                    Some(l) if pos < word.len() && l.as_str() == word[pos].as_ref() => pos + 1,
                    Some(_) => continue,
                };
                let mut next = marking.clone();
                for &p in &inputs[t] {
                    next[p] -= 1;
                }
                for &p in &outputs[t] {
                    next[p] += 1;
                }
                let state = (next, next_pos);
                if seen.len() < STATE_LIMIT && seen.insert(state.clone()) {
                    queue.push_back(state);
                }
            }
        }
        false
    }
}

/// Translates a tree into a workflow net. Place `p0` is the source and `p1`
/// the sink; the initial marking puts one token on the source and the final
/// marking one on the sink.
pub fn tree_to_petri(tree: &ProcessTree) -> PetriNet {
    let mut net = PetriNet::default();
    let source = net.add_place();
    let sink = net.add_place();
    build(&mut net, tree, source, sink);
    net.initial_marking.insert(source, 1);
    net.final_marking.insert(sink, 1);
    net
}

fn build(net: &mut PetriNet, node: &ProcessTree, entry: usize, exit: usize) {
    let through = |net: &mut PetriNet, label: Option<ActivityLabel>, from: usize, to: usize| {
        let t = net.add_transition(label);
        net.connect(NodeRef::Place(from), NodeRef::Transition(t));
        net.connect(NodeRef::Transition(t), NodeRef::Place(to));
        t
    };
    match node {
        ProcessTree::Activity(a) => {
            through(net, Some(a.clone()), entry, exit);
        }
        ProcessTree::Silent => {
            through(net, None, entry, exit);
        }
        ProcessTree::Sequence(children) => {
            let mut from = entry;
            for (i, child) in children.iter().enumerate() {
                let to = if i + 1 == children.len() {
                    exit
                } else {
                    net.add_place()
                };
                build(net, child, from, to);
                from = to;
            }
        }
        ProcessTree::Choice(children) => {
            for child in children {
                build(net, child, entry, exit);
            }
        }
        ProcessTree::Parallel(children) => {
            let fork = net.add_transition(None);
            let join = net.add_transition(None);
            net.connect(NodeRef::Place(entry), NodeRef::Transition(fork));
            for child in children {
                let (s, e) = (net.add_place(), net.add_place());
                net.connect(NodeRef::Transition(fork), NodeRef::Place(s));
                build(net, child, s, e);
                net.connect(NodeRef::Place(e), NodeRef::Transition(join));
            }
            net.connect(NodeRef::Transition(join), NodeRef::Place(exit));
        }
        ProcessTree::Loop(children) => {
            // silent entry/exit keep the loop's own places off the net boundary
            let (body, redos) = children.split_first().expect("loop has a body");
            let (s, m) = (net.add_place(), net.add_place());
            through(net, None, entry, s);
            build(net, body, s, m);
            for redo in redos {
                build(net, redo, m, s);
            }
            through(net, None, m, exit);
        }
    }
}
