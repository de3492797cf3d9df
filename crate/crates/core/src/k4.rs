//! One depth-first search that either finds a subdivision of `K4` or a
//! reason the graph is not 3-connected.

use crate::graph::{EdgeId, MultiGraph, NodeId};
use crate::subdivision::Subdivision;
use crate::witness::Witness;

const NONE: usize = usize::MAX;

/// Edges of a `K4`-subdivision together with its four branch nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K4Edges {
    pub edges: Vec<EdgeId>,
    pub branch: [NodeId; 4],
    /// The direct assembly failed its self-check and the generic extractor
    /// produced the result.
    pub used_fallback: bool,
}

struct Dfs {
    parent: Vec<NodeId>,
    parent_edge: Vec<EdgeId>,
    pre: Vec<usize>,
    depth: Vec<usize>,
    size: Vec<usize>,
    children: Vec<Vec<NodeId>>,
    order: Vec<NodeId>,
}

impl Dfs {
    fn run(g: &MultiGraph, adj: &[Vec<(EdgeId, NodeId)>], root: NodeId) -> Dfs {
        let n = g.node_bound();
        let mut d = Dfs {
            parent: vec![NONE; n],
            parent_edge: vec![NONE; n],
            pre: vec![NONE; n],
            depth: vec![0; n],
            size: vec![1; n],
            children: vec![Vec::new(); n],
            order: Vec::new(),
        };
        let mut stack: Vec<(NodeId, usize)> = vec![(root, 0)];
        d.pre[root] = 0;
        d.order.push(root);
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if let Some(&(e, w)) = adj[u].get(*next) {
                *next += 1;
                if d.pre[w] == NONE {
                    d.pre[w] = d.order.len();
                    d.order.push(w);
                    d.parent[w] = u;
                    d.parent_edge[w] = e;
                    d.depth[w] = d.depth[u] + 1;
                    d.children[u].push(w);
                    stack.push((w, 0));
                }
            } else {
                stack.pop();
                if d.parent[u] != NONE {
                    let s = d.size[u];
                    d.size[d.parent[u]] += s;
                }
            }
        }
        d
    }

    fn lca(&self, mut u: NodeId, mut v: NodeId) -> NodeId {
        while self.depth[u] > self.depth[v] {
            u = self.parent[u];
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v];
        }
        while u != v {
            u = self.parent[u];
            v = self.parent[v];
        }
        u
    }

    /// Tree path from `anc` down to `desc`.
    fn down(&self, anc: NodeId, desc: NodeId) -> Vec<NodeId> {
        let mut path = vec![desc];
        let mut v = desc;
        while v != anc {
            v = self.parent[v];
            path.push(v);
        }
        path.reverse();
        path
    }

    fn tree_edges(&self, anc: NodeId, desc: NodeId, out: &mut Vec<EdgeId>) {
        let mut v = desc;
        while v != anc {
            out.push(self.parent_edge[v]);
            v = self.parent[v];
        }
    }

    fn child_toward(&self, anc: NodeId, desc: NodeId) -> NodeId {
        let mut v = desc;
        while self.parent[v] != anc {
            v = self.parent[v];
        }
        v
    }
}

/// Incidence lists ordered by edge id.
fn sorted_adjacency(g: &MultiGraph) -> Vec<Vec<(EdgeId, NodeId)>> {
    let mut adj = vec![Vec::new(); g.node_bound()];
    for v in g.nodes() {
        let mut list: Vec<(EdgeId, NodeId)> = g.incident(v).filter(|&(_, w)| w != v).collect();
        list.sort_unstable();
        adj[v] = list;
    }
    adj
}

/// Checks the simple graph against the cheap necessary conditions.
pub fn gate(g: &MultiGraph) -> Result<(), Witness> {
    if g.node_count() < 4 {
        return Err(Witness::TooFewNodes);
    }
    if !g.is_connected() {
        return Err(Witness::Disconnected);
    }
    if let Some(v) = g.nodes().find(|&v| g.neighbors(v).len() < 3) {
        return Err(Witness::LowDegree(v));
    }
    Ok(())
}

/// A `K4`-subdivision of the simple graph `g`, or a witness.
pub fn find_k4_subdivision(g: &MultiGraph) -> Result<Subdivision<'_>, Witness> {
    let found = find_k4_edges(g)?;
    Ok(Subdivision::new(g, &found.edges).expect("self-checked K4-subdivision"))
}

pub fn find_k4_edges(g: &MultiGraph) -> Result<K4Edges, Witness> {
    search(g, false)
}

/// Same as [`find_k4_edges`] but always takes the generic extractor.
pub fn find_k4_edges_generic(g: &MultiGraph) -> Result<K4Edges, Witness> {
    search(g, true)
}

fn search(g: &MultiGraph, force_generic: bool) -> Result<K4Edges, Witness> {
    gate(g)?;
    let adj = sorted_adjacency(g);
    let a = g.nodes().next().expect("non-empty graph");
    let dfs = Dfs::run(g, &adj, a);
    if dfs.children[a].len() >= 2 {
        return Err(Witness::CutVertex(a));
    }
    let b = dfs.children[a][0];
    if dfs.children[b].len() >= 2 {
        return Err(Witness::pair(a, b));
    }
    let mut others: Vec<NodeId> = adj[a].iter().map(|&(_, w)| w).filter(|&w| w != b).take(2).collect();
    others.sort_by_key(|&w| dfs.pre[w]);
    let (c, d) = (others[0], others[1]);
    let i = dfs.lca(c, d);
    if !force_generic && i != a && i != b {
        if let Some(res) = assemble(g, &adj, &dfs, a, c, d, i)? {
            return Ok(res);
        }
    }
    generic(g, &dfs, a, c, d, i)
}

fn edge(g: &MultiGraph, u: NodeId, v: NodeId) -> EdgeId {
    g.edge_between(u, v).expect("adjacent nodes")
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    g: &MultiGraph,
    adj: &[Vec<(EdgeId, NodeId)>],
    dfs: &Dfs,
    a: NodeId,
    c: NodeId,
    d: NodeId,
    i: NodeId,
) -> Result<Option<K4Edges>, Witness> {
    let j = dfs.child_toward(i, d);
    let di = dfs.depth[i];
    let mut back: Option<(NodeId, NodeId)> = None;
    'scan: for &z in &dfs.order[dfs.pre[j]..dfs.pre[j] + dfs.size[j]] {
        for &(_, t) in &adj[z] {
            if dfs.depth[t] > 0 && dfs.depth[t] < di {
                back = Some((z, t));
                break 'scan;
            }
        }
    }
    let Some((z, t)) = back else {
        return Err(Witness::pair(a, i));
    };
    let w = dfs.lca(d, z);
    let mut edges = Vec::new();
    dfs.tree_edges(a, t, &mut edges);
    dfs.tree_edges(t, i, &mut edges);
    dfs.tree_edges(i, w, &mut edges);
    dfs.tree_edges(w, z, &mut edges);
    edges.push(edge(g, z, t));
    dfs.tree_edges(w, d, &mut edges);
    edges.push(edge(g, d, a));
    edges.push(edge(g, a, c));
    dfs.tree_edges(i, c, &mut edges);
    edges.sort_unstable();
    let mut branch = [a, t, i, w];
    branch.sort_unstable();
    Ok(self_check(g, edges, branch, false))
}

fn self_check(g: &MultiGraph, edges: Vec<EdgeId>, branch: [NodeId; 4], used_fallback: bool) -> Option<K4Edges> {
    let s = Subdivision::new(g, &edges).ok()?;
    let real: Vec<NodeId> = s.real_nodes().collect();
    if real != branch || s.links().len() != 6 {
        return None;
    }
    Some(K4Edges { edges, branch, used_fallback })
}

/// Theta graph on `a` and `i` from the three tree/back-edge routes, then a
/// bridge between the interiors of two of its paths.
fn generic(g: &MultiGraph, dfs: &Dfs, a: NodeId, c: NodeId, d: NodeId, i: NodeId) -> Result<K4Edges, Witness> {
    let up = |x: NodeId| {
        let mut p = dfs.down(i, x);
        p.reverse();
        let mut full = vec![a];
        full.extend(p);
        full
    };
    let paths = [dfs.down(a, i), up(c), up(d)];
    let (p, q) = (a, i);
    let n = g.node_bound();
    let mut label = vec![NONE; n];
    for (k, path) in paths.iter().enumerate() {
        for &v in &path[1..path.len() - 1] {
            label[v] = k;
        }
    }
    let mut seen = vec![NONE; n];
    let mut pred = vec![NONE; n];
    for k in 0..3 {
        let mut queue = std::collections::VecDeque::new();
        for &v in &paths[k][1..paths[k].len() - 1] {
            seen[v] = k;
            pred[v] = NONE;
            queue.push_back(v);
        }
        while let Some(u) = queue.pop_front() {
            let mut nbrs: Vec<(EdgeId, NodeId)> = g.incident(u).collect();
            nbrs.sort_unstable();
            for (_, v) in nbrs {
                if v == p || v == q || v == u {
                    continue;
                }
                if label[v] != NONE && label[v] != k {
                    let mut bridge = vec![v, u];
                    let mut x = u;
                    while pred[x] != NONE {
                        x = pred[x];
                        bridge.push(x);
                    }
                    return Ok(from_theta(g, &paths, p, q, &bridge));
                }
                if label[v] == NONE && seen[v] != k {
                    seen[v] = k;
                    pred[v] = u;
                    queue.push_back(v);
                }
            }
        }
    }
    Err(Witness::pair(p, q))
}

fn from_theta(g: &MultiGraph, paths: &[Vec<NodeId>; 3], p: NodeId, q: NodeId, bridge: &[NodeId]) -> K4Edges {
    let mut edges = Vec::new();
    for path in paths.iter().map(|v| v.as_slice()).chain(std::iter::once(bridge)) {
        for w in path.windows(2) {
            edges.push(edge(g, w[0], w[1]));
        }
    }
    edges.sort_unstable();
    let mut branch = [p, q, bridge[0], *bridge.last().unwrap()];
    branch.sort_unstable();
    self_check(g, edges, branch, true).expect("theta plus bridge is a K4-subdivision")
}
