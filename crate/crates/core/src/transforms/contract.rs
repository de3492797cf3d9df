//! Contraction sequences: edges whose contraction keeps the graph
//! 3-connected, ending at `K4`.

use super::edge_rep::{replay, EdgeRepresentation, Op};
use crate::error::TransformError;
use crate::graph::{MultiGraph, NodeId};

/// Union-find whose representative is the smallest node id of its class,
/// matching the survivor of [`MultiGraph::contract_edge`].
struct MinDsu {
    parent: Vec<NodeId>,
}

impl MinDsu {
    fn find(&mut self, mut x: NodeId) -> NodeId {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: NodeId, b: NodeId) {
        let (ra, rb) = (self.find(a), self.find(b));
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
    }
}

/// Contractions, as label pairs of the current graph, that reduce the
/// replayed graph to `G0`. Each new node of an operation is contracted
/// toward one end of the edge it subdivided.
pub fn to_contractions(er: &EdgeRepresentation) -> Result<Vec<(u64, u64)>, TransformError> {
    let replayed = replay(er)?;
    let mut dsu = MinDsu { parent: (0..er.labels.len()).collect() };
    let mut out = Vec::new();
    let mut contract = |dsu: &mut MinDsu, x: NodeId, t: NodeId| {
        let (rx, rt) = (dsu.find(x), dsu.find(t));
        out.push((er.labels[rx], er.labels[rt]));
        dsu.union(rx, rt);
    };
    for (k, op) in er.ops.iter().enumerate().rev() {
        let far = replayed.far[k];
        match *op {
            Op::A { .. } => {}
            Op::B { keep, x, .. } => contract(&mut dsu, x, keep.max(far[0])),
            Op::C { keep1, x, keep2, y, .. } => {
                let (e1, e2) = ([keep1, far[0]], [keep2, far[1]]);
                let shared = e1.iter().copied().find(|v| e2.contains(v));
                let target = |e: [NodeId; 2]| match shared {
                    Some(s) => {
                        if e[0] == s {
                            e[1]
                        } else {
                            e[0]
                        }
                    }
                    None => e[0].max(e[1]),
                };
                contract(&mut dsu, x, target(e1));
                contract(&mut dsu, y, target(e2));
            }
            Op::D { w, mut anchors, .. } => {
                anchors.sort_unstable();
                contract(&mut dsu, w, anchors[1]);
            }
        }
    }
    Ok(out)
}

/// Contracts the edge between the nodes labelled `u` and `v`.
pub fn apply_contraction(g: &mut MultiGraph, u: u64, v: u64) -> Result<(), TransformError> {
    let missing = |l: u64| TransformError::Invalid(format!("no node labelled {l}"));
    let a = g.node_by_label(u).filter(|&a| g.is_node_alive(a)).ok_or_else(|| missing(u))?;
    let b = g.node_by_label(v).filter(|&b| g.is_node_alive(b)).ok_or_else(|| missing(v))?;
    let e = g
        .edge_between(a, b)
        .ok_or_else(|| TransformError::Invalid(format!("nodes {u} and {v} are not adjacent")))?;
    g.contract_edge(e).map_err(|err| TransformError::Invalid(err.to_string()))?;
    Ok(())
}
