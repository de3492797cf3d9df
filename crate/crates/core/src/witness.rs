//! Evidence that a graph is not 3-connected.

use crate::graph::{MultiGraph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Witness {
    /// Fewer than four nodes.
    TooFewNodes,
    /// A node with at most two distinct neighbours.
    LowDegree(NodeId),
    Disconnected,
    CutVertex(NodeId),
    SeparationPair(NodeId, NodeId),
}

impl Witness {
    /// Separation pair with the smaller id first.
    pub fn pair(u: NodeId, v: NodeId) -> Witness {
        Witness::SeparationPair(u.min(v), u.max(v))
    }
}

impl Witness {
    /// Whether the witness is correct for the simple graph `g`.
    pub fn holds_in(&self, g: &MultiGraph) -> bool {
        let alive = |v: NodeId| v < g.node_bound() && g.is_node_alive(v);
        match *self {
            Witness::TooFewNodes => g.node_count() < 4,
            Witness::LowDegree(v) => alive(v) && g.neighbors(v).iter().filter(|&&w| w != v).count() < 3,
            Witness::Disconnected => !g.is_connected(),
            Witness::CutVertex(v) => alive(v) && g.components_avoiding(&[v]).len() > 1,
            Witness::SeparationPair(u, v) => {
                alive(u) && alive(v) && u != v && g.components_avoiding(&[u, v]).len() > 1
            }
        }
    }
}
