//! Sparse certificate for 3-connectivity.
//!
//! Three successive breadth-first spanning forests, each taken in the graph
//! left after removing the previous ones. Breadth-first search is a scan-first
//! search, so the union keeps every local vertex connectivity up to three and
//! has at most `3(n - 1)` edges.

use std::collections::VecDeque;

use crate::graph::{EdgeId, MultiGraph};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ForestDecomposition {
    pub forests: [Vec<EdgeId>; 3],
    /// Union of the forests, ascending.
    pub kept: Vec<EdgeId>,
}

/// Returns the spanning subgraph made of three scan-first forests. Node and
/// edge ids are unchanged; dropped edges are dead in the output.
pub fn sparsify3(g: &MultiGraph) -> (MultiGraph, ForestDecomposition) {
    let mut used = vec![false; g.edge_bound()];
    let mut visited = vec![false; g.node_bound()];
    let mut queue = VecDeque::new();
    let mut forests: [Vec<EdgeId>; 3] = Default::default();

    for forest in forests.iter_mut() {
        visited.iter_mut().for_each(|v| *v = false);
        for root in g.nodes() {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for (e, w) in g.incident(u) {
                    if used[e] || visited[w] {
                        continue;
                    }
                    visited[w] = true;
                    used[e] = true;
                    forest.push(e);
                    queue.push_back(w);
                }
            }
        }
    }

    let mut kept: Vec<EdgeId> = forests.iter().flatten().copied().collect();
    kept.sort_unstable();
    let mut out = g.clone();
    for e in g.edges() {
        if !used[e] {
            out.remove_edge(e).expect("live edge");
        }
    }
    (out, ForestDecomposition { forests, kept })
}
