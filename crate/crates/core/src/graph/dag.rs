//! Directed graphs over dense vertex indices, with transitive reduction and
//! closure for the acyclic case.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use super::GraphError;

/// A directed graph on vertices `0..n`. Edges are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Digraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    /// # Panics
    /// If an endpoint is `>= n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Digraph::new(n);
        for (v, w) in edges {
            g.add_edge(v, w);
        }
        g
    }

    pub fn add_edge(&mut self, v: usize, w: usize) {
        assert!(
            v < self.n && w < self.n,
            "edge ({v}, {w}) out of range for {} vertices",
            self.n
        );
        self.edges.insert((v, w));
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, v: usize, w: usize) -> bool {
        self.edges.contains(&(v, w))
    }

    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.n];
        for &(v, w) in &self.edges {
            succ[v].push(w);
        }
        succ
    }

    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.n];
        for &(v, w) in &self.edges {
            pred[w].push(v);
        }
        pred
    }

    /// Kahn's algorithm, smallest index first among ready vertices.
    pub fn topological_order(&self) -> Result<Vec<usize>, GraphError> {
        let succ = self.successors();
        let mut indegree = vec![0usize; self.n];
        for &(_, w) in &self.edges {
            indegree[w] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..self.n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &w in &succ[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        if order.len() == self.n {
            Ok(order)
        } else {
            Err(GraphError::Cycle {
                cycle: self.find_cycle(&succ),
            })
        }
    }

    fn find_cycle(&self, succ: &[Vec<usize>]) -> Vec<usize> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Open,
            Done,
        }
        let mut mark = vec![Mark::New; self.n];
        for root in 0..self.n {
            if mark[root] != Mark::New {
                continue;
            }
            // (vertex, next successor slot)
            let mut stack = vec![(root, 0usize)];
            mark[root] = Mark::Open;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if let Some(&w) = succ[v].get(*next) {
                    *next += 1;
                    match mark[w] {
                        Mark::New => {
                            mark[w] = Mark::Open;
                            stack.push((w, 0));
                        }
                        Mark::Open => {
                            let start = stack.iter().position(|&(u, _)| u == w).unwrap();
                            return stack[start..].iter().map(|&(u, _)| u).collect();
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark[v] = Mark::Done;
                    stack.pop();
                }
            }
        }
        Vec::new()
    }

    /// Strict reachability: bit `w` of entry `v` is set iff a path of length
    /// at least one leads from `v` to `w`. Requires an acyclic graph.
    pub fn reachability(&self) -> Result<Vec<FixedBitSet>, GraphError> {
        let order = self.topological_order()?;
        let succ = self.successors();
        let mut reach = vec![FixedBitSet::with_capacity(self.n); self.n];
        for &v in order.iter().rev() {
            let mut acc = FixedBitSet::with_capacity(self.n);
            for &w in &succ[v] {
                acc.insert(w);
                acc.union_with(&reach[w]);
            }
            reach[v] = acc;
        }
        Ok(reach)
    }

    /// The unique transitive reduction of an acyclic graph. Rejects cyclic
    /// input with one of its cycles.
    pub fn transitive_reduction(&self) -> Result<Digraph, GraphError> {
        let order = self.topological_order()?;
        let mut position = vec![0usize; self.n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut succ = self.successors();
        for list in &mut succ {
            list.sort_by_key(|&w| position[w]);
        }
        let mut reach = vec![FixedBitSet::with_capacity(self.n); self.n];
        let mut reduced = Digraph::new(self.n);
        for &v in order.iter().rev() {
            let mut acc = FixedBitSet::with_capacity(self.n);
            // successors in topological order: anything reachable through an
            // earlier successor is already in `acc`
            for &w in &succ[v] {
                if !acc.contains(w) {
                    reduced.edges.insert((v, w));
                }
                acc.insert(w);
                acc.union_with(&reach[w]);
            }
            reach[v] = acc;
        }
        Ok(reduced)
    }
}
