//! Index-stable undirected multigraph.
//!
//! Nodes and edges are addressed by dense indices that never get reused for a
//! different purpose: deleting marks a slot dead and keeps its last endpoints.
//! Certificates refer to edges by index, so every stage of the pipeline works
//! on the same index space as the parsed input.

use std::collections::HashMap;

use crate::error::GraphError;

pub type NodeId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeState {
    /// Slot reserved by an explicit id but never populated.
    Unused,
    Alive,
    Dead,
}

#[derive(Debug, Clone)]
struct EdgeSlot {
    ends: [NodeId; 2],
    state: EdgeState,
    gen: u32,
}

#[derive(Debug, Clone, Copy)]
struct Incidence {
    edge: EdgeId,
    other: NodeId,
    gen: u32,
}

/// Undirected multigraph with stable node and edge indices.
///
/// Incidence lists are append-only and filtered lazily, so iteration visits
/// the edges of a node in the order they were attached (ascending id for a
/// freshly parsed graph).
#[derive(Debug, Clone, Default)]
pub struct MultiGraph {
    labels: Vec<u64>,
    label_index: HashMap<u64, NodeId>,
    node_alive: Vec<bool>,
    degree: Vec<usize>,
    incidence: Vec<Vec<Incidence>>,
    edges: Vec<EdgeSlot>,
    live_nodes: usize,
    live_edges: usize,
}

/// What `simplify` threw away.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimplifyReport {
    pub removed_self_loops: Vec<EdgeId>,
    /// `(kept edge, removed duplicates)` for every class of parallel edges.
    pub merged_parallel_classes: Vec<(EdgeId, Vec<EdgeId>)>,
}

impl SimplifyReport {
    pub fn is_empty(&self) -> bool {
        self.removed_self_loops.is_empty() && self.merged_parallel_classes.is_empty()
    }
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with nodes labelled `0..n`.
    pub fn with_nodes(n: usize) -> Self {
        let mut g = Self::new();
        for label in 0..n as u64 {
            g.add_node(label);
        }
        g
    }

    /// Graph whose node `i` carries `labels[i]`. Labels must be distinct.
    pub fn with_labels(labels: &[u64]) -> Result<Self, GraphError> {
        let mut g = Self::new();
        for &label in labels {
            if g.label_index.contains_key(&label) {
                return Err(GraphError::DuplicateLabel(label));
            }
            g.add_node(label);
        }
        Ok(g)
    }

    /// Builds a graph from labelled edges; node ids follow ascending label order.
    pub fn from_labeled_edges(edges: &[(u64, u64)]) -> Self {
        let mut labels: Vec<u64> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        labels.sort_unstable();
        labels.dedup();
        let mut g = Self::with_labels(&labels).expect("labels deduplicated");
        for &(u, v) in edges {
            let (u, v) = (g.label_index[&u], g.label_index[&v]);
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_node(&mut self, label: u64) -> NodeId {
        let id = self.labels.len();
        self.labels.push(label);
        self.label_index.insert(label, id);
        self.node_alive.push(true);
        self.degree.push(0);
        self.incidence.push(Vec::new());
        self.live_nodes += 1;
        id
    }

    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> EdgeId {
        let id = self.edges.len();
        self.edges.push(EdgeSlot { ends: [u, v], state: EdgeState::Unused, gen: 0 });
        self.attach(id, u, v);
        id
    }

    /// Places an edge at a caller-chosen index. The slot may be unused or dead
    /// but not alive; slots between the current bound and `id` become unused.
    pub fn add_edge_with_id(&mut self, id: EdgeId, u: NodeId, v: NodeId) -> Result<(), GraphError> {
        if !self.is_node_alive(u) || !self.is_node_alive(v) {
            return Err(GraphError::DeadNode(if self.is_node_alive(u) { v } else { u }));
        }
        while self.edges.len() <= id {
            self.edges.push(EdgeSlot { ends: [0, 0], state: EdgeState::Unused, gen: 0 });
        }
        if self.edges[id].state == EdgeState::Alive {
            return Err(GraphError::EdgeInUse(id));
        }
        self.attach(id, u, v);
        Ok(())
    }

    fn attach(&mut self, id: EdgeId, u: NodeId, v: NodeId) {
        assert!(self.node_alive[u] && self.node_alive[v], "edge endpoint is dead");
        let slot = &mut self.edges[id];
        slot.gen += 1;
        slot.ends = [u, v];
        slot.state = EdgeState::Alive;
        let gen = slot.gen;
        self.incidence[u].push(Incidence { edge: id, other: v, gen });
        self.incidence[v].push(Incidence { edge: id, other: u, gen });
        self.degree[u] += 1;
        self.degree[v] += 1;
        self.live_edges += 1;
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Result<(), GraphError> {
        if !self.is_edge_alive(e) {
            return Err(GraphError::DeadEdge(e));
        }
        let [u, v] = self.edges[e].ends;
        self.edges[e].state = EdgeState::Dead;
        self.degree[u] -= 1;
        self.degree[v] -= 1;
        self.live_edges -= 1;
        Ok(())
    }

    /// Deletes a node together with all its live edges.
    pub fn remove_node(&mut self, v: NodeId) -> Result<(), GraphError> {
        if !self.is_node_alive(v) {
            return Err(GraphError::DeadNode(v));
        }
        let incident: Vec<EdgeId> = self.incident(v).map(|(e, _)| e).collect();
        for e in incident {
            // self-loops are listed twice
            if self.is_edge_alive(e) {
                self.remove_edge(e)?;
            }
        }
        self.node_alive[v] = false;
        self.incidence[v].clear();
        self.live_nodes -= 1;
        Ok(())
    }

    /// Number of live nodes.
    pub fn node_count(&self) -> usize {
        self.live_nodes
    }

    /// Number of live edges.
    pub fn edge_count(&self) -> usize {
        self.live_edges
    }

    /// Upper bound (exclusive) on node ids.
    pub fn node_bound(&self) -> usize {
        self.labels.len()
    }

    /// Upper bound (exclusive) on edge ids.
    pub fn edge_bound(&self) -> usize {
        self.edges.len()
    }

    pub fn is_node_alive(&self, v: NodeId) -> bool {
        v < self.node_alive.len() && self.node_alive[v]
    }

    pub fn is_edge_alive(&self, e: EdgeId) -> bool {
        e < self.edges.len() && self.edges[e].state == EdgeState::Alive
    }

    pub fn edge_state(&self, e: EdgeId) -> EdgeState {
        self.edges.get(e).map_or(EdgeState::Unused, |s| s.state)
    }

    /// Endpoints of an edge, live or dead.
    pub fn endpoints(&self, e: EdgeId) -> (NodeId, NodeId) {
        let [u, v] = self.edges[e].ends;
        (u, v)
    }

    /// The endpoint of `e` opposite to `v`.
    pub fn opposite(&self, e: EdgeId, v: NodeId) -> NodeId {
        let [a, b] = self.edges[e].ends;
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.degree[v]
    }

    pub fn label(&self, v: NodeId) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn node_by_label(&self, label: u64) -> Option<NodeId> {
        self.label_index.get(&label).copied()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.labels.len()).filter(|&v| self.node_alive[v])
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).filter(|&e| self.edges[e].state == EdgeState::Alive)
    }

    /// Live `(edge, other endpoint)` pairs at `v`, in attachment order.
    /// A self-loop shows up twice.
    pub fn incident(&self, v: NodeId) -> impl Iterator<Item = (EdgeId, NodeId)> + '_ {
        self.incidence[v].iter().filter_map(move |inc| {
            let slot = &self.edges[inc.edge];
            (slot.state == EdgeState::Alive && slot.gen == inc.gen).then_some((inc.edge, inc.other))
        })
    }

    /// Distinct neighbours of `v`, sorted.
    pub fn neighbors(&self, v: NodeId) -> Vec<NodeId> {
        let mut out: Vec<NodeId> = self.incident(v).map(|(_, w)| w).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Smallest live edge id joining `u` and `v`.
    pub fn edge_between(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        let (scan, other) = if self.degree[u] <= self.degree[v] { (u, v) } else { (v, u) };
        self.incident(scan).filter(|&(_, w)| w == other).map(|(e, _)| e).min()
    }

    pub fn min_degree(&self) -> Option<(NodeId, usize)> {
        self.nodes().map(|v| (v, self.degree[v])).min_by_key(|&(v, d)| (d, v))
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = vec![usize::MAX; self.node_bound()];
        for v in self.nodes() {
            for (_, w) in self.incident(v) {
                if w == v || seen[w] == v {
                    return false;
                }
                seen[w] = v;
            }
        }
        true
    }

    /// Removes self-loops and all but the lowest-id edge of each parallel class.
    /// Node and edge ids are preserved; removed edges become dead.
    pub fn simplify(&self) -> (MultiGraph, SimplifyReport) {
        let mut out = self.clone();
        let mut report = SimplifyReport::default();
        let mut classes: HashMap<(NodeId, NodeId), (EdgeId, Vec<EdgeId>)> = HashMap::new();
        for e in self.edges() {
            let (u, v) = self.endpoints(e);
            if u == v {
                report.removed_self_loops.push(e);
                continue;
            }
            let key = (u.min(v), u.max(v));
            classes.entry(key).or_insert_with(|| (e, Vec::new())).1.push(e);
        }
        for &e in &report.removed_self_loops {
            out.remove_edge(e).expect("live self-loop");
        }
        let mut merged: Vec<(EdgeId, Vec<EdgeId>)> = classes
            .into_values()
            .filter_map(|(keep, mut all)| {
                all.retain(|&e| e != keep);
                (!all.is_empty()).then_some((keep, all))
            })
            .collect();
        merged.sort_unstable();
        for (_, dups) in &merged {
            for &e in dups {
                out.remove_edge(e).expect("live duplicate");
            }
        }
        report.merged_parallel_classes = merged;
        (out, report)
    }

    /// Smooths `v` if it has degree two, two distinct neighbours and no loop.
    ///
    /// Returns the id of the joining edge, or `None` when the conditions do not
    /// hold and the graph is left unchanged. `replacement` picks the id of the
    /// joining edge; by default a fresh id is appended.
    pub fn smooth(&mut self, v: NodeId, replacement: Option<EdgeId>) -> Result<Option<EdgeId>, GraphError> {
        if !self.is_node_alive(v) {
            return Err(GraphError::DeadNode(v));
        }
        if self.degree[v] != 2 {
            return Ok(None);
        }
        let inc: Vec<(EdgeId, NodeId)> = self.incident(v).collect();
        let (e, a) = inc[0];
        let (f, b) = inc[1];
        if a == b || a == v || b == v {
            return Ok(None);
        }
        self.remove_node(v)?;
        let _ = (e, f);
        match replacement {
            Some(id) => {
                self.add_edge_with_id(id, a, b)?;
                Ok(Some(id))
            }
            None => Ok(Some(self.add_edge(a, b))),
        }
    }

    /// The two live edges at a degree-two node, as `(edge, far end)` pairs.
    pub fn two_edges(&self, v: NodeId) -> Option<[(EdgeId, NodeId); 2]> {
        if self.degree[v] != 2 {
            return None;
        }
        let mut it = self.incident(v);
        Some([it.next()?, it.next()?])
    }

    /// Contracts `e`: its endpoints merge into the lower node id, then every
    /// resulting parallel class collapses onto its lowest edge id.
    /// Returns the surviving node.
    pub fn contract_edge(&mut self, e: EdgeId) -> Result<NodeId, GraphError> {
        if !self.is_edge_alive(e) {
            return Err(GraphError::DeadEdge(e));
        }
        let (u, v) = self.endpoints(e);
        if u == v {
            return Err(GraphError::ContractSelfLoop(e));
        }
        let (keep, gone) = (u.min(v), u.max(v));
        self.remove_edge(e)?;
        let moved: Vec<(EdgeId, NodeId)> = self.incident(gone).collect();
        for &(f, w) in &moved {
            if !self.is_edge_alive(f) {
                continue;
            }
            self.remove_edge(f)?;
            let target = if w == gone { keep } else { w };
            self.add_edge_with_id(f, keep, target)?;
        }
        self.node_alive[gone] = false;
        self.incidence[gone].clear();
        self.live_nodes -= 1;

        // collapse 2-cycles and drop loops at the survivor
        let mut best: HashMap<NodeId, EdgeId> = HashMap::new();
        let mut drop = Vec::new();
        for (f, w) in self.incident(keep).collect::<Vec<_>>() {
            if w == keep {
                drop.push(f);
                continue;
            }
            match best.get(&w) {
                Some(&g) if g < f => drop.push(f),
                Some(&g) => {
                    drop.push(g);
                    best.insert(w, f);
                }
                None => {
                    best.insert(w, f);
                }
            }
        }
        drop.sort_unstable();
        drop.dedup();
        for f in drop {
            if self.is_edge_alive(f) {
                self.remove_edge(f)?;
            }
        }
        Ok(keep)
    }

    /// Connected components of the live nodes, each sorted, ordered by their
    /// smallest node.
    pub fn connected_components(&self) -> Vec<Vec<NodeId>> {
        self.components_avoiding(&[])
    }

    /// Components of the graph with `removed` deleted.
    pub fn components_avoiding(&self, removed: &[NodeId]) -> Vec<Vec<NodeId>> {
        let mut seen = vec![false; self.node_bound()];
        for &r in removed {
            if r < seen.len() {
                seen[r] = true;
            }
        }
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in self.nodes() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for (_, w) in self.incident(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_avoiding(&[]).len() <= 1
    }

    /// Multiset of live edges as sorted label pairs.
    pub fn labeled_edges(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = self
            .edges()
            .map(|e| {
                let (u, v) = self.endpoints(e);
                let (a, b) = (self.labels[u], self.labels[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        out.sort_unstable();
        out
    }
}
