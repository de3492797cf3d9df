//! Indexed edge representation: `G0` plus operations that name every edge id
//! they consume or create, so that replay rebuilds `G` with identical ids.

use std::collections::HashMap;

use crate::error::TransformError;
use crate::graph::{EdgeId, MultiGraph, NodeId};
use crate::sequencer::{PathRepresentation, Step};
use crate::subdivision::{BgPath, ExpandRecord};

/// One construction operation. `split` edges keep their id on the side of
/// `keep`; the other side gets the fresh id `part`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Op {
    /// New edge `u v`.
    A { u: NodeId, v: NodeId, new: EdgeId },
    /// Subdivide `split` with the new node `x`, then join `x` to `y`.
    B { split: EdgeId, keep: NodeId, x: NodeId, part: EdgeId, y: NodeId, new: EdgeId },
    /// Subdivide two edges with new nodes `x` and `y`, then join them.
    C {
        split1: EdgeId,
        keep1: NodeId,
        x: NodeId,
        part1: EdgeId,
        split2: EdgeId,
        keep2: NodeId,
        y: NodeId,
        part2: EdgeId,
        new: EdgeId,
    },
    /// New node `w` joined to three existing nodes.
    D { w: NodeId, anchors: [NodeId; 3], new: [EdgeId; 3] },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeRepresentation {
    /// Label of every node of `G`, indexed by node id.
    pub labels: Vec<u64>,
    /// `(id, u, v)` with `u < v`, ascending by id.
    pub g0: Vec<(EdgeId, NodeId, NodeId)>,
    pub ops: Vec<Op>,
}

fn invalid(msg: impl Into<String>) -> TransformError {
    TransformError::Invalid(msg.into())
}

fn replay_err(op: usize, msg: impl Into<String>) -> TransformError {
    TransformError::Replay { op, msg: msg.into() }
}

fn pair_index(g: &MultiGraph) -> HashMap<(NodeId, NodeId), EdgeId> {
    g.edges()
        .map(|e| {
            let (u, v) = g.endpoints(e);
            ((u.min(v), u.max(v)), e)
        })
        .collect()
}

fn min_edge(index: &HashMap<(NodeId, NodeId), EdgeId>, nodes: &[NodeId]) -> Result<EdgeId, TransformError> {
    nodes
        .windows(2)
        .map(|w| {
            index
                .get(&(w[0].min(w[1]), w[0].max(w[1])))
                .copied()
                .ok_or_else(|| invalid(format!("no edge between nodes {} and {}", w[0], w[1])))
        })
        .try_fold(EdgeId::MAX, |m, e| e.map(|e| m.min(e)))
}

/// Smooths a degree-two node, giving the merged edge the lower of the two ids.
/// Returns `(merged id, far end of that edge, higher id)`.
fn smooth_low(w: &mut MultiGraph, x: NodeId) -> Result<Option<(EdgeId, NodeId, EdgeId)>, TransformError> {
    match w.degree(x) {
        0 | 1 => Err(invalid(format!("node {x} drops below degree two"))),
        2 => {
            let [(e, p), (f, q)] = w.two_edges(x).expect("degree two");
            let (lo, keep, hi) = if e < f { (e, p, f) } else { (f, q, e) };
            match w.smooth(x, Some(lo)) {
                Ok(Some(_)) => Ok(Some((lo, keep, hi))),
                _ => Err(invalid(format!("node {x} cannot be smoothed"))),
            }
        }
        _ => Ok(None),
    }
}

/// Removes the steps of `pr` from the simple graph `g` in reverse order.
pub fn path_to_edge(g: &MultiGraph, pr: &PathRepresentation) -> Result<EdgeRepresentation, TransformError> {
    let index = pair_index(g);
    let mut w = g.clone();
    let mut ops = Vec::with_capacity(pr.steps.len());
    for step in pr.steps.iter().rev() {
        match step {
            Step::Path(p) => {
                let id = min_edge(&index, &p.nodes)?;
                let (a, b) = (p.first(), p.last());
                if !w.is_edge_alive(id) || !same_ends(w.endpoints(id), (a, b)) {
                    return Err(invalid(format!("path {a}->{b} is not a single edge at removal")));
                }
                w.remove_edge(id).expect("live edge");
                let sa = smooth_low(&mut w, a)?;
                let sb = smooth_low(&mut w, b)?;
                ops.push(match (sa, sb) {
                    (None, None) => Op::A { u: a, v: b, new: id },
                    (Some((split, keep, part)), None) => Op::B { split, keep, x: a, part, y: b, new: id },
                    (None, Some((split, keep, part))) => Op::B { split, keep, x: b, part, y: a, new: id },
                    (Some((split1, keep1, part1)), Some((split2, keep2, part2))) => Op::C {
                        split1,
                        keep1,
                        x: a,
                        part1,
                        split2,
                        keep2,
                        y: b,
                        part2,
                        new: id,
                    },
                });
            }
            Step::Expand(x) => {
                let c = x.center;
                let anchors = x.anchors();
                let mut new = [0; 3];
                for (k, arm) in x.arms.iter().enumerate() {
                    let id = min_edge(&index, arm)?;
                    if !w.is_edge_alive(id) || !same_ends(w.endpoints(id), (c, anchors[k])) {
                        return Err(invalid(format!("arm {c}->{} is not a single edge at removal", anchors[k])));
                    }
                    new[k] = id;
                }
                if w.degree(c) != 3 {
                    return Err(invalid(format!("expand center {c} does not have degree three")));
                }
                w.remove_node(c).expect("live node");
                ops.push(Op::D { w: c, anchors, new });
            }
        }
    }
    if w.node_count() != 4 || w.edge_count() != 6 || !w.is_simple() {
        return Err(invalid("residue is not K4"));
    }
    let mut g0: Vec<(EdgeId, NodeId, NodeId)> = w
        .edges()
        .map(|e| {
            let (u, v) = w.endpoints(e);
            (e, u.min(v), u.max(v))
        })
        .collect();
    g0.sort_unstable();
    ops.reverse();
    Ok(EdgeRepresentation { labels: g.labels().to_vec(), g0, ops })
}

fn same_ends(e: (NodeId, NodeId), want: (NodeId, NodeId)) -> bool {
    e == want || (e.1, e.0) == want
}

/// State after replaying an edge representation.
pub(crate) struct Replayed {
    pub g: MultiGraph,
    /// For every edge id, the id of the `G0` edge or operation edge whose
    /// path it belongs to.
    pub root: Vec<EdgeId>,
    /// Far ends of the split edges of each op, opposite to `keep`.
    pub far: Vec<[NodeId; 2]>,
}

struct Ids {
    used: Vec<bool>,
    root: Vec<EdgeId>,
}

impl Ids {
    fn claim(&mut self, e: EdgeId, root: EdgeId) -> bool {
        if e >= self.used.len() {
            self.used.resize(e + 1, false);
            self.root.resize(e + 1, EdgeId::MAX);
        }
        if self.used[e] {
            return false;
        }
        self.used[e] = true;
        self.root[e] = root;
        true
    }
}

pub(crate) fn replay(er: &EdgeRepresentation) -> Result<Replayed, TransformError> {
    let mut g = MultiGraph::with_labels(&er.labels).map_err(|e| invalid(e.to_string()))?;
    let n = er.labels.len();
    let mut present = vec![false; n];
    let mut ids = Ids { used: Vec::new(), root: Vec::new() };
    let node_ok = |v: NodeId| v < n;
    for &(e, u, v) in &er.g0 {
        if !node_ok(u) || !node_ok(v) || u == v {
            return Err(invalid(format!("bad G0 edge {e}")));
        }
        if !ids.claim(e, e) {
            return Err(invalid(format!("G0 edge id {e} repeated")));
        }
        g.add_edge_with_id(e, u, v).map_err(|err| invalid(err.to_string()))?;
        present[u] = true;
        present[v] = true;
    }
    let mut far = Vec::with_capacity(er.ops.len());
    for (k, op) in er.ops.iter().enumerate() {
        let err = |msg: &str| replay_err(k, msg);
        let fresh_node = |v: NodeId, present: &mut Vec<bool>| {
            if !node_ok(v) || present[v] {
                return Err(err("new node already exists"));
            }
            present[v] = true;
            Ok(())
        };
        let old_node = |v: NodeId, present: &Vec<bool>| {
            if node_ok(v) && present[v] {
                Ok(())
            } else {
                Err(err("node does not exist yet"))
            }
        };
        let split = |g: &mut MultiGraph, ids: &mut Ids, e: EdgeId, keep: NodeId, x: NodeId, part: EdgeId| {
            if e >= g.edge_bound() || !g.is_edge_alive(e) {
                return Err(err("split edge is not alive"));
            }
            let (p, q) = g.endpoints(e);
            let other = if p == keep {
                q
            } else if q == keep {
                p
            } else {
                return Err(err("kept endpoint is not on the split edge"));
            };
            let r = ids.root[e];
            if !ids.claim(part, r) {
                return Err(err("edge id already used"));
            }
            g.remove_edge(e).expect("live edge");
            g.add_edge_with_id(e, keep, x).expect("dead slot");
            g.add_edge_with_id(part, x, other).expect("fresh slot");
            Ok(other)
        };
        let join = |g: &mut MultiGraph, ids: &mut Ids, e: EdgeId, u: NodeId, v: NodeId| {
            if u == v {
                return Err(err("new edge is a loop"));
            }
            if !ids.claim(e, e) {
                return Err(err("edge id already used"));
            }
            g.add_edge_with_id(e, u, v).expect("fresh slot");
            Ok(())
        };
        match *op {
            Op::A { u, v, new } => {
                old_node(u, &present)?;
                old_node(v, &present)?;
                join(&mut g, &mut ids, new, u, v)?;
                far.push([NodeId::MAX; 2]);
            }
            Op::B { split: e, keep, x, part, y, new } => {
                fresh_node(x, &mut present)?;
                old_node(y, &present)?;
                let other = split(&mut g, &mut ids, e, keep, x, part)?;
                if y == keep || y == other {
                    return Err(err("new edge duplicates a split part"));
                }
                join(&mut g, &mut ids, new, x, y)?;
                far.push([other, NodeId::MAX]);
            }
            Op::C { split1, keep1, x, part1, split2, keep2, y, part2, new } => {
                fresh_node(x, &mut present)?;
                let o1 = split(&mut g, &mut ids, split1, keep1, x, part1)?;
                fresh_node(y, &mut present)?;
                let o2 = split(&mut g, &mut ids, split2, keep2, y, part2)?;
                join(&mut g, &mut ids, new, x, y)?;
                far.push([o1, o2]);
            }
            Op::D { w, anchors, new } => {
                fresh_node(w, &mut present)?;
                for a in anchors {
                    old_node(a, &present)?;
                }
                if anchors[0] == anchors[1] || anchors[0] == anchors[2] || anchors[1] == anchors[2] {
                    return Err(err("anchors are not distinct"));
                }
                for (a, e) in anchors.into_iter().zip(new) {
                    join(&mut g, &mut ids, e, w, a)?;
                }
                far.push([NodeId::MAX; 2]);
            }
        }
    }
    for (v, &here) in present.iter().enumerate() {
        if !here {
            g.remove_node(v).expect("live node");
        }
    }
    Ok(Replayed { g, root: ids.root, far })
}

/// Rebuilds `G` with the ids named by the operations.
pub fn replay_edge_rep(er: &EdgeRepresentation) -> Result<MultiGraph, TransformError> {
    Ok(replay(er)?.g)
}

/// Recovers the path representation by tracking which operation edge every
/// split part descends from.
pub fn edge_to_path(er: &EdgeRepresentation) -> Result<PathRepresentation, TransformError> {
    let Replayed { g, root, .. } = replay(er)?;
    let mut groups: HashMap<EdgeId, Vec<EdgeId>> = HashMap::new();
    for e in g.edges() {
        groups.entry(root[e]).or_default().push(e);
    }
    let mut s0_edges: Vec<EdgeId> = Vec::new();
    for &(e, _, _) in &er.g0 {
        s0_edges.extend(groups.get(&e).into_iter().flatten());
    }
    s0_edges.sort_unstable();
    let walk = |id: EdgeId, from: NodeId, to: NodeId| -> Result<Vec<NodeId>, TransformError> {
        let edges = groups.get(&id).ok_or_else(|| invalid(format!("edge {id} has no path")))?;
        let mut at: HashMap<NodeId, Vec<(EdgeId, NodeId)>> = HashMap::with_capacity(edges.len() + 1);
        for &e in edges {
            let (u, v) = g.endpoints(e);
            at.entry(u).or_default().push((e, v));
            at.entry(v).or_default().push((e, u));
        }
        let mut nodes = vec![from];
        let mut prev = EdgeId::MAX;
        let mut cur = from;
        while cur != to || nodes.len() == 1 {
            let next = at
                .get(&cur)
                .and_then(|list| list.iter().find(|&&(e, _)| e != prev))
                .ok_or_else(|| invalid(format!("path of edge {id} is broken")))?;
            prev = next.0;
            cur = next.1;
            nodes.push(cur);
            if nodes.len() > edges.len() + 1 {
                return Err(invalid(format!("path of edge {id} is not simple")));
            }
        }
        if nodes.len() != edges.len() + 1 {
            return Err(invalid(format!("path of edge {id} is not simple")));
        }
        Ok(nodes)
    };
    let mut steps = Vec::with_capacity(er.ops.len());
    for op in &er.ops {
        steps.push(match *op {
            Op::A { u, v, new } => Step::Path(BgPath::new(walk(new, u.min(v), u.max(v))?)),
            Op::B { x, y, new, .. } => Step::Path(BgPath::new(walk(new, x, y)?)),
            Op::C { x, y, new, .. } => Step::Path(BgPath::new(walk(new, x.min(y), x.max(y))?)),
            Op::D { w, anchors, new } => Step::Expand(ExpandRecord {
                center: w,
                arms: [walk(new[0], w, anchors[0])?, walk(new[1], w, anchors[1])?, walk(new[2], w, anchors[2])?],
            }),
        });
    }
    Ok(PathRepresentation { s0_edges, steps, basic: false })
}

/// Whether two graphs have the same live ids with the same endpoints.
pub fn identical(a: &MultiGraph, b: &MultiGraph) -> bool {
    let nodes_a: Vec<NodeId> = a.nodes().collect();
    let nodes_b: Vec<NodeId> = b.nodes().collect();
    if nodes_a != nodes_b || nodes_a.iter().any(|&v| a.label(v) != b.label(v)) {
        return false;
    }
    let edges_a: Vec<EdgeId> = a.edges().collect();
    let edges_b: Vec<EdgeId> = b.edges().collect();
    edges_a == edges_b && edges_a.iter().all(|&e| same_ends(a.endpoints(e), b.endpoints(e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const K4: [(u64, u64); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

    fn counterexample() -> (MultiGraph, PathRepresentation) {
        let mut edges = K4.to_vec();
        edges.extend([(5, 1), (5, 2), (5, 3)]);
        let pr = PathRepresentation {
            s0_edges: vec![0, 1, 2, 3, 4, 5],
            steps: vec![Step::Path(BgPath::new(vec![0, 4, 1])), Step::Path(BgPath::new(vec![4, 2]))],
            basic: false,
        };
        (MultiGraph::from_labeled_edges(&edges), pr)
    }

    #[test]
    fn k4_has_no_ops() {
        let g = MultiGraph::from_labeled_edges(&K4);
        let er = path_to_edge(&g, &PathRepresentation { s0_edges: (0..6).collect(), ..Default::default() }).unwrap();
        assert!(er.ops.is_empty());
        assert_eq!(er.g0.len(), 6);
        assert!(identical(&replay_edge_rep(&er).unwrap(), &g));
        assert!(edge_to_path(&er).unwrap().steps.is_empty());
    }

    #[test]
    fn counterexample_ops() {
        let (g, pr) = counterexample();
        let er = path_to_edge(&g, &pr).unwrap();
        // 1-5-2 keeps the lower id 6 for the merged edge; 5-3 is edge 8
        assert_eq!(
            er.ops,
            vec![
                Op::A { u: 0, v: 1, new: 6 },
                Op::B { split: 6, keep: 0, x: 4, part: 7, y: 2, new: 8 },
            ]
        );
        assert!(identical(&replay_edge_rep(&er).unwrap(), &g));
        assert_eq!(edge_to_path(&er).unwrap(), pr);
    }

    #[test]
    fn reused_id_is_a_replay_error() {
        let (g, pr) = counterexample();
        let mut er = path_to_edge(&g, &pr).unwrap();
        if let Op::B { new, .. } = &mut er.ops[1] {
            *new = 6;
        }
        assert!(matches!(replay_edge_rep(&er), Err(TransformError::Replay { op: 1, .. })));
    }
}
