//! Bridges of the underlying undirected graph (lowlink method).

/// Returns the indices into `edges` of every edge whose removal disconnects
/// its weakly connected component. Edge direction is ignored; parallel edges
/// are never bridges.
pub fn bridge_edges(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for (id, &(v, w)) in edges.iter().enumerate() {
        adj[v].push((w, id));
        adj[w].push((v, id));
    }
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut bridges = Vec::new();
    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, edge used to enter it, next adjacency slot)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, via, slot) = *top;
            if let Some(&(w, id)) = adj[v].get(slot) {
                top.2 += 1;
                if id == via {
                    continue;
                }
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, id, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        bridges.push(via);
                    }
                }
            }
        }
    }
    bridges.sort_unstable();
    bridges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_edges_are_all_bridges() {
        let edges: Vec<_> = (0..5).map(|i| (i, i + 1)).collect();
        assert_eq!(bridge_edges(6, &edges), [0, 1, 2, 3, 4]);
    }

    #[test]
    fn four_cycle_has_none() {
        // directed, but a cycle once direction is dropped
        let edges = [(0, 1), (0, 2), (1, 3), (2, 3)];
        assert!(bridge_edges(4, &edges).is_empty());
    }

    #[test]
    fn parallel_edges_are_not_bridges() {
        assert!(bridge_edges(2, &[(0, 1), (1, 0)]).is_empty());
    }

    #[test]
    fn components_are_independent() {
        // triangle, isolated vertex, and a single edge
        let edges = [(0, 1), (1, 2), (2, 0), (4, 5)];
        assert_eq!(bridge_edges(6, &edges), [3]);
    }
}
