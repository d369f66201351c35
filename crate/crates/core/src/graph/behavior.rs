use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;

use super::{bridge_edges, Digraph, GraphError};
use crate::model::{UncertainEvent, UncertainTrace};

/// Per-trace behavior graph.
///
/// Vertex `i` is the `i`-th event of the trace. There is an edge `v -> w` in
/// the unreduced graph iff `t_max(v) < t_min(w)`, i.e. `v` certainly happened
/// before `w`; the stored graph is its transitive reduction. Reachability and
/// bridges are computed once at build time.
#[derive(Debug, Clone)]
pub struct BehaviorGraph {
    events: Vec<UncertainEvent>,
    index: HashMap<String, usize>,
    graph: Digraph,
    reach: Vec<FixedBitSet>,
    ancestors: Vec<FixedBitSet>,
    determinate: FixedBitSet,
    bridges: BTreeSet<(usize, usize)>,
}

/// The graph with an edge for every pair of events in certain timestamp order,
/// before reduction.
pub fn order_graph(trace: &UncertainTrace) -> Digraph {
    let n = trace.events.len();
    let mut g = Digraph::new(n);
    for (v, ev) in trace.events.iter().enumerate() {
        for (w, ew) in trace.events.iter().enumerate() {
            if ev.t_max < ew.t_min {
                g.add_edge(v, w);
            }
        }
    }
    g
}

pub fn build_behavior_graph(trace: &UncertainTrace) -> Result<BehaviorGraph, GraphError> {
    BehaviorGraph::build(trace)
}

impl BehaviorGraph {
    /// Fails only for traces with inverted intervals, which can make the
    /// order graph cyclic.
    pub fn build(trace: &UncertainTrace) -> Result<Self, GraphError> {
        let n = trace.events.len();
        let graph = order_graph(trace).transitive_reduction()?;
        let reach = graph.reachability()?;
        let mut ancestors = vec![FixedBitSet::with_capacity(n); n];
        for (v, set) in reach.iter().enumerate() {
            for w in set.ones() {
                ancestors[w].insert(v);
            }
        }
        let mut determinate = FixedBitSet::with_capacity(n);
        for (v, e) in trace.events.iter().enumerate() {
            determinate.set(v, e.determinate);
        }
        let edge_list: Vec<_> = graph.edges().collect();
        let bridges = bridge_edges(n, &edge_list)
            .into_iter()
            .map(|i| edge_list[i])
            .collect();
        let index = trace
            .events
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.clone(), i))
            .collect();
        Ok(BehaviorGraph {
            events: trace.events.clone(),
            index,
            graph,
            reach,
            ancestors,
            determinate,
            bridges,
        })
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[UncertainEvent] {
        &self.events
    }

    pub fn event(&self, v: usize) -> &UncertainEvent {
        &self.events[v]
    }

    pub fn vertex(&self, id: &str) -> Result<usize, GraphError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(id.to_owned()))
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.graph.edges()
    }

    /// Edges as pairs of event ids.
    pub fn edge_ids(&self) -> Vec<(&str, &str)> {
        self.edges()
            .map(|(v, w)| (self.events[v].id.as_str(), self.events[w].id.as_str()))
            .collect()
    }

    /// Whether some path leads from `v` to `w`. Every vertex reaches itself
    /// through the single-vertex path.
    pub fn reachable(&self, v: usize, w: usize) -> bool {
        v == w || self.reach[v].contains(w)
    }

    pub fn reachable_by_id(&self, v: &str, w: &str) -> Result<bool, GraphError> {
        Ok(self.reachable(self.vertex(v)?, self.vertex(w)?))
    }

    pub fn bridges(&self) -> &BTreeSet<(usize, usize)> {
        &self.bridges
    }

    pub fn is_bridge(&self, v: usize, w: usize) -> bool {
        self.bridges.contains(&(v, w))
    }

    /// `v` and `w` certainly happened one right after the other: both are
    /// determinate and `(v, w)` is a bridge.
    pub fn strong_seq(&self, v: usize, w: usize) -> bool {
        self.determinate[v] && self.determinate[w] && self.is_bridge(v, w)
    }

    /// `w` may directly follow `v`: `v` is not reachable from `w`, and every
    /// vertex strictly between them on some `v -> w` path is indeterminate.
    pub fn weak_seq(&self, v: usize, w: usize) -> bool {
        if v != w && self.reach[w].contains(v) {
            return false;
        }
        // interior vertices of all v -> w paths
        let mut interior = self.reach[v].clone();
        interior.intersect_with(&self.ancestors[w]);
        interior.is_disjoint(&self.determinate)
    }

    /// Vertices without incoming edges.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.ancestors[v].is_clear())
            .collect()
    }

    /// Vertices without outgoing edges.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.reach[v].is_clear())
            .collect()
    }

    /// Vertices that can open a realization: every event certainly before
    /// them is indeterminate. A superset of [`sources`](Self::sources).
    pub fn possible_first(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.ancestors[v].is_disjoint(&self.determinate))
            .collect()
    }

    /// Vertices that can close a realization.
    pub fn possible_last(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.reach[v].is_disjoint(&self.determinate))
            .collect()
    }
}
