//! Maximum-cardinality selection of candidate pairs.
//!
//! Two activities `a != b`: chosen pairs must be vertex-disjoint, which is a
//! matching in the undirected graph of candidates. When no vertex occurs both
//! as a first and a second member that graph is bipartite and augmenting
//! paths suffice; otherwise Edmonds' blossom algorithm is used.
//!
//! Same activity on both sides: a vertex may be used once as first member
//! and once as second member, i.e. a bipartite matching between the
//! "from" copies and the "to" copies of the vertices.

use std::collections::{BTreeMap, BTreeSet};

const NONE: usize = usize::MAX;

/// A largest admissible subset of `cands`, sorted.
pub fn select_pairs(cands: &[(usize, usize)], same_activity: bool) -> Vec<(usize, usize)> {
    let firsts: BTreeSet<usize> = cands.iter().map(|&(v, _)| v).collect();
    let seconds: BTreeSet<usize> = cands.iter().map(|&(_, w)| w).collect();
    let mut chosen = if same_activity || firsts.is_disjoint(&seconds) {
        bipartite(cands, &firsts, &seconds)
    } else {
        general(cands)
    };
    chosen.sort_unstable();
    chosen
}

fn bipartite(
    cands: &[(usize, usize)],
    firsts: &BTreeSet<usize>,
    seconds: &BTreeSet<usize>,
) -> Vec<(usize, usize)> {
    let left: Vec<usize> = firsts.iter().copied().collect();
    let right: Vec<usize> = seconds.iter().copied().collect();
    let right_index: BTreeMap<usize, usize> =
        right.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let left_index: BTreeMap<usize, usize> =
        left.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![Vec::new(); left.len()];
    for &(v, w) in cands {
        adj[left_index[&v]].push(right_index[&w]);
    }
    let mate = max_bipartite_matching(right.len(), &adj);
    mate.iter()
        .enumerate()
        .filter(|&(_, &l)| l != NONE)
        .map(|(r, &l)| (left[l], right[r]))
        .collect()
}

fn general(cands: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let vertices: Vec<usize> = cands
        .iter()
        .flat_map(|&(v, w)| [v, w])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<_> = cands.iter().map(|&(v, w)| (index[&v], index[&w])).collect();
    let mate = max_general_matching(vertices.len(), &edges);
    let pairs: BTreeSet<_> = cands.iter().copied().collect();
    let mut chosen = Vec::new();
    for (i, &j) in mate.iter().enumerate() {
        if j == NONE || i > j {
            continue;
        }
        let (v, w) = (vertices[i], vertices[j]);
        chosen.push(if pairs.contains(&(v, w)) {
            (v, w)
        } else {
            (w, v)
        });
    }
    chosen
}

/// Augmenting-path bipartite matching. `adj[l]` lists the right vertices
/// adjacent to left vertex `l`. Returns, for every right vertex, its matched
/// left vertex or `usize::MAX`.
pub fn max_bipartite_matching(n_right: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    fn augment(l: usize, adj: &[Vec<usize>], seen: &mut [bool], mate: &mut [usize]) -> bool {
        for &r in &adj[l] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if mate[r] == NONE || augment(mate[r], adj, seen, mate) {
                mate[r] = l;
                return true;
            }
        }
        false
    }
    let mut mate = vec![NONE; n_right];
    for l in 0..adj.len() {
        let mut seen = vec![false; n_right];
        augment(l, adj, &mut seen, &mut mate);
    }
    mate
}

/// Edmonds' blossom algorithm for maximum matching in a general undirected
/// graph. Returns the mate of every vertex or `usize::MAX`.
pub fn max_general_matching(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(v, w) in edges {
        if v != w {
            adj[v].push(w);
            adj[w].push(v);
        }
    }
    let mut blossom = Blossom {
        adj,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
    };
    for root in 0..n {
        if blossom.mate[root] == NONE {
            let end = blossom.find_augmenting_path(root);
            if end != NONE {
                blossom.augment(end);
            }
        }
    }
    blossom.mate
}

struct Blossom {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
}

impl Blossom {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut on_path = vec![false; self.mate.len()];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, base: usize, mut child: usize, in_blossom: &mut [bool]) {
        while self.base[v] != base {
            in_blossom[self.base[v]] = true;
            in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_augmenting_path(&mut self, root: usize) -> usize {
        let n = self.mate.len();
        let mut used = vec![false; n];
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        used[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for k in 0..self.adj[v].len() {
                let to = self.adj[v][k];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    let mut in_blossom = vec![false; n];
                    self.mark_path(v, cur, to, &mut in_blossom);
                    self.mark_path(to, cur, v, &mut in_blossom);
                    for i in 0..n {
                        if in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !used[i] {
                                used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let next = self.mate[to];
                    used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        NONE
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}
