//! A growing subdivision `S` inside a host graph.
//!
//! Nodes of `S` with degree at least three are *real*; the maximal paths
//! between real nodes are *links* and partition the edges of `S`. The state is
//! extended one BG-path or expand operation at a time, updating only the links
//! that are touched.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::StructureError;
use crate::graph::{EdgeId, MultiGraph, NodeId};

const NONE: usize = usize::MAX;

/// A path `x = v0, .., vk = y` through the host graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BgPath {
    pub nodes: Vec<NodeId>,
}

impl BgPath {
    pub fn new(nodes: Vec<NodeId>) -> Self {
        BgPath { nodes }
    }

    pub fn first(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn last(&self) -> NodeId {
        *self.nodes.last().expect("non-empty path")
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn inner(&self) -> &[NodeId] {
        if self.nodes.len() <= 2 {
            &[]
        } else {
            &self.nodes[1..self.nodes.len() - 1]
        }
    }

    pub fn reversed(&self) -> BgPath {
        let mut nodes = self.nodes.clone();
        nodes.reverse();
        BgPath { nodes }
    }
}

/// Three paths from a new center node to three distinct real nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpandRecord {
    pub center: NodeId,
    /// Each arm starts at `center` and ends at its anchor.
    pub arms: [Vec<NodeId>; 3],
}

impl ExpandRecord {
    pub fn anchors(&self) -> [NodeId; 3] {
        [0, 1, 2].map(|i| *self.arms[i].last().expect("non-empty arm"))
    }

    /// Arms reordered by ascending anchor id.
    pub fn sorted(mut self) -> ExpandRecord {
        self.arms.sort_by_key(|arm| *arm.last().expect("non-empty arm"));
        self
    }
}

/// Which requirement of a BG-path failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// Not a simple path of the host.
    NotAPath,
    /// The path meets `S` somewhere other than its two endpoints.
    Intersects,
    /// Both endpoints lie on one link and one of them is inner.
    SameLink,
    /// Both endpoints are inner nodes of two parallel links.
    ParallelLinks,
}

impl Violation {
    /// Condition number of the BG-path definition; 0 for malformed paths.
    pub fn condition(self) -> u8 {
        match self {
            Violation::NotAPath => 0,
            Violation::Intersects => 1,
            Violation::SameLink => 2,
            Violation::ParallelLinks => 3,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Violation::NotAPath => "not a simple path of the graph",
            Violation::Intersects => "path meets the subdivision outside its endpoints (condition 1)",
            Violation::SameLink => "endpoints lie on a common link (condition 2)",
            Violation::ParallelLinks => "endpoints are inner nodes of parallel links (condition 3)",
        };
        f.write_str(msg)
    }
}

/// A maximal path of `S` whose inner nodes all have degree two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<EdgeId>,
}

impl Link {
    /// Endpoints, smaller id first.
    pub fn ends(&self) -> (NodeId, NodeId) {
        pair(self.nodes[0], *self.nodes.last().expect("non-empty link"))
    }

    pub fn inner(&self) -> &[NodeId] {
        &self.nodes[1..self.nodes.len() - 1]
    }

    fn canonical(mut self) -> Link {
        if self.nodes[0] > *self.nodes.last().unwrap() {
            self.nodes.reverse();
            self.edges.reverse();
        }
        self
    }

    fn min_edge(&self) -> EdgeId {
        *self.edges.iter().min().expect("links have edges")
    }
}

fn pair(a: NodeId, b: NodeId) -> (NodeId, NodeId) {
    (a.min(b), a.max(b))
}

/// Outcome of a successful growth step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Applied {
    /// The step left two links with the same endpoint pair.
    pub created_parallel: bool,
}

#[derive(Debug, Clone)]
pub struct Subdivision<'g> {
    host: &'g MultiGraph,
    node_in: Vec<bool>,
    edge_in: Vec<bool>,
    deg: Vec<usize>,
    links: Vec<Option<Link>>,
    inner_link: Vec<usize>,
    edge_link: Vec<usize>,
    parallel: HashMap<(NodeId, NodeId), usize>,
    inner: BTreeSet<NodeId>,
    node_count: usize,
    edge_count: usize,
}

impl<'g> Subdivision<'g> {
    /// Builds `S` from an edge set of `host`.
    ///
    /// The edges must form a connected subdivision of a simple graph with at
    /// least four branch nodes: every node has degree two or more, no cycle
    /// lacks a branch node, and no two links share their endpoints.
    pub fn new(host: &'g MultiGraph, s0_edges: &[EdgeId]) -> Result<Self, StructureError> {
        let n = host.node_bound();
        let mut s = Subdivision {
            host,
            node_in: vec![false; n],
            edge_in: vec![false; host.edge_bound()],
            deg: vec![0; n],
            links: Vec::new(),
            inner_link: vec![NONE; n],
            edge_link: vec![NONE; host.edge_bound()],
            parallel: HashMap::new(),
            inner: BTreeSet::new(),
            node_count: 0,
            edge_count: 0,
        };
        for &e in s0_edges {
            if !host.is_edge_alive(e) || s.edge_in[e] {
                return Err(StructureError::NotHostEdge(e));
            }
            let (u, v) = host.endpoints(e);
            if u == v {
                return Err(StructureError::LoopLink(u));
            }
            s.edge_in[e] = true;
            s.edge_count += 1;
            for w in [u, v] {
                if !s.node_in[w] {
                    s.node_in[w] = true;
                    s.node_count += 1;
                }
                s.deg[w] += 1;
            }
        }
        for v in 0..n {
            if s.node_in[v] && s.deg[v] < 2 {
                return Err(StructureError::BadDegree(v, s.deg[v]));
            }
        }
        let links = compute_links(host, &s.edge_in, &s.deg)?;
        let real = (0..n).filter(|&v| s.node_in[v] && s.deg[v] >= 3).count();
        if real < 4 {
            return Err(StructureError::TooFewBranchNodes(real));
        }
        for link in links {
            let (a, b) = link.ends();
            if a == b {
                return Err(StructureError::LoopLink(a));
            }
            let count = s.parallel.entry((a, b)).or_insert(0);
            *count += 1;
            if *count > 1 {
                return Err(StructureError::ParallelLinks(a, b));
            }
            s.insert_link(link);
        }
        let first = (0..n).find(|&v| s.node_in[v]);
        if let Some(first) = first {
            if s.reachable_in_s(first) != s.node_count {
                return Err(StructureError::Disconnected);
            }
        }
        Ok(s)
    }

    fn reachable_in_s(&self, start: NodeId) -> usize {
        let mut seen = vec![false; self.node_in.len()];
        let mut stack = vec![start];
        seen[start] = true;
        let mut count = 0;
        while let Some(v) = stack.pop() {
            count += 1;
            for (e, w) in self.host.incident(v) {
                if self.edge_in[e] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        count
    }

    fn insert_link(&mut self, link: Link) -> usize {
        let id = self.links.len();
        for &v in link.inner() {
            self.inner_link[v] = id;
            self.inner.insert(v);
        }
        for &e in &link.edges {
            self.edge_link[e] = id;
        }
        self.links.push(Some(link));
        id
    }

    pub fn host(&self) -> &'g MultiGraph {
        self.host
    }

    pub fn contains_node(&self, v: NodeId) -> bool {
        self.node_in[v]
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edge_in[e]
    }

    pub fn degree_in(&self, v: NodeId) -> usize {
        self.deg[v]
    }

    pub fn is_real(&self, v: NodeId) -> bool {
        self.node_in[v] && self.deg[v] >= 3
    }

    /// Link containing `v` as an inner node.
    pub fn link_of_inner(&self, v: NodeId) -> Option<&Link> {
        match self.inner_link[v] {
            NONE => None,
            id => self.links[id].as_ref(),
        }
    }

    /// Link containing edge `e`.
    pub fn link_of_edge(&self, e: EdgeId) -> Option<&Link> {
        match self.edge_link.get(e).copied().unwrap_or(NONE) {
            NONE => None,
            id => self.links[id].as_ref(),
        }
    }

    /// Degree-two nodes of `S`, ascending.
    pub fn inner_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.inner.iter().copied()
    }

    /// `S` equals its smoothing: it has no degree-two nodes.
    pub fn is_smooth(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// `S` contains every live edge and node of the host.
    pub fn covers_host(&self) -> bool {
        self.edge_count == self.host.edge_count() && self.node_count == self.host.node_count()
    }

    pub fn real_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_in.len()).filter(|&v| self.is_real(v))
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_in.len()).filter(|&e| self.edge_in[e])
    }

    /// Number of links joining `a` and `b`.
    pub fn parallel_count(&self, a: NodeId, b: NodeId) -> usize {
        self.parallel.get(&pair(a, b)).copied().unwrap_or(0)
    }

    /// All links, each oriented from its smaller endpoint, ordered by their
    /// smallest edge id.
    pub fn links(&self) -> Vec<Link> {
        let mut out: Vec<Link> = self.links.iter().flatten().cloned().map(Link::canonical).collect();
        out.sort_by_key(Link::min_edge);
        out
    }

    /// Links recomputed from the membership flags alone.
    pub fn links_from_scratch(&self) -> Result<Vec<Link>, StructureError> {
        let mut out: Vec<Link> = compute_links(self.host, &self.edge_in, &self.deg)?
            .into_iter()
            .map(Link::canonical)
            .collect();
        out.sort_by_key(Link::min_edge);
        Ok(out)
    }

    /// Smoothed subdivision as a graph on the real nodes, one edge per link.
    pub fn smoothed(&self) -> MultiGraph {
        let mut g = MultiGraph::with_labels(self.host.labels()).expect("host labels distinct");
        for v in 0..self.node_in.len() {
            if !self.is_real(v) {
                g.remove_node(v).expect("fresh node");
            }
        }
        for link in self.links() {
            let (a, b) = link.ends();
            g.add_edge(a, b);
        }
        g
    }

    /// Host edges of a node sequence, preferring the smallest id outside `S`.
    pub fn path_edges(&self, nodes: &[NodeId]) -> Result<Vec<EdgeId>, Violation> {
        nodes
            .windows(2)
            .map(|w| {
                let (u, v) = (w[0], w[1]);
                if !self.host.is_node_alive(u) || !self.host.is_node_alive(v) {
                    return Err(Violation::NotAPath);
                }
                let mut any = false;
                let mut best: Option<EdgeId> = None;
                for (e, x) in self.host.incident(u) {
                    if x == v && u != v {
                        any = true;
                        if !self.edge_in[e] && best.is_none_or(|b| e < b) {
                            best = Some(e);
                        }
                    }
                }
                match (best, any) {
                    (Some(e), _) => Ok(e),
                    (None, true) => Err(Violation::Intersects),
                    (None, false) => Err(Violation::NotAPath),
                }
            })
            .collect()
    }

    fn distinct(&self, nodes: &[NodeId]) -> bool {
        let mut seen: Vec<NodeId> = nodes.to_vec();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Checks the three BG-path conditions against the current `S`.
    pub fn check_bg_path(&self, p: &BgPath) -> Result<(), Violation> {
        if p.nodes.len() < 2 || !self.distinct(&p.nodes) {
            return Err(Violation::NotAPath);
        }
        if p.nodes.iter().any(|&v| v >= self.node_in.len() || !self.host.is_node_alive(v)) {
            return Err(Violation::NotAPath);
        }
        let (x, y) = (p.first(), p.last());
        if !self.node_in[x] || !self.node_in[y] || p.inner().iter().any(|&v| self.node_in[v]) {
            // an endpoint outside S is still a path problem, but reported as
            // a failure of the intersection condition after checking adjacency
            self.path_edges(&p.nodes)?;
            return Err(Violation::Intersects);
        }
        self.path_edges(&p.nodes)?;
        let lx = self.inner_link[x];
        let ly = self.inner_link[y];
        let on_link = |v: NodeId, l: usize| {
            self.inner_link[v] == l || {
                let link = self.links[l].as_ref().expect("live link");
                let (a, b) = link.ends();
                v == a || v == b
            }
        };
        if (lx != NONE && on_link(y, lx)) || (ly != NONE && on_link(x, ly)) {
            return Err(Violation::SameLink);
        }
        if lx != NONE && ly != NONE {
            let ex = self.links[lx].as_ref().expect("live link").ends();
            let ey = self.links[ly].as_ref().expect("live link").ends();
            if ex == ey {
                return Err(Violation::ParallelLinks);
            }
        }
        Ok(())
    }

    fn split_at(&mut self, x: NodeId) -> bool {
        let lid = self.inner_link[x];
        let link = self.links[lid].take().expect("live link");
        let k = link.nodes.iter().position(|&v| v == x).expect("inner node on its link");
        let left = Link { nodes: link.nodes[..=k].to_vec(), edges: link.edges[..k].to_vec() };
        let right = Link { nodes: link.nodes[k..].to_vec(), edges: link.edges[k..].to_vec() };
        self.inner_link[x] = NONE;
        self.inner.remove(&x);
        self.bump(link.ends(), false);
        let mut created = self.bump(left.ends(), true);
        created |= self.bump(right.ends(), true);
        self.links[lid] = Some(left);
        let rid = self.links.len();
        for &v in right.inner() {
            self.inner_link[v] = rid;
        }
        for &e in &right.edges {
            self.edge_link[e] = rid;
        }
        self.links.push(Some(right));
        created
    }

    /// Adjusts the parallel index; returns whether the pair is now doubled.
    fn bump(&mut self, ends: (NodeId, NodeId), up: bool) -> bool {
        let count = self.parallel.entry(ends).or_insert(0);
        if up {
            *count += 1;
            *count > 1
        } else {
            *count -= 1;
            if *count == 0 {
                self.parallel.remove(&ends);
            }
            false
        }
    }

    fn add_chain(&mut self, nodes: &[NodeId], edges: &[EdgeId]) -> bool {
        for &v in &nodes[1..nodes.len() - 1] {
            self.node_in[v] = true;
            self.node_count += 1;
            self.deg[v] = 2;
        }
        for &e in edges {
            self.edge_in[e] = true;
            self.edge_count += 1;
        }
        let link = Link { nodes: nodes.to_vec(), edges: edges.to_vec() };
        let created = self.bump(link.ends(), true);
        self.insert_link(link);
        created
    }

    /// Adds a BG-path; its inner nodes form one new link and inner-node
    /// endpoints become real, splitting their links.
    pub fn apply_bg_path(&mut self, p: &BgPath) -> Result<Applied, StructureError> {
        self.check_bg_path(p).map_err(StructureError::InvalidPath)?;
        let edges = self.path_edges(&p.nodes).map_err(StructureError::InvalidPath)?;
        let mut created = false;
        for end in [p.first(), p.last()] {
            if self.inner_link[end] != NONE {
                created |= self.split_at(end);
            }
            self.deg[end] += 1;
        }
        created |= self.add_chain(&p.nodes, &edges);
        Ok(Applied { created_parallel: created })
    }

    /// Adds three arms from a new center to three distinct real nodes.
    pub fn apply_expand(&mut self, x: &ExpandRecord) -> Result<Applied, StructureError> {
        let bad = |msg: &str| StructureError::InvalidExpand(msg.to_string());
        let c = x.center;
        if c >= self.node_in.len() || !self.host.is_node_alive(c) {
            return Err(bad("center is not a node of the graph"));
        }
        if self.node_in[c] {
            return Err(bad("center already belongs to the subdivision"));
        }
        let anchors = x.anchors();
        if anchors[0] == anchors[1] || anchors[0] == anchors[2] || anchors[1] == anchors[2] {
            return Err(bad("anchors are not distinct"));
        }
        let mut all: Vec<NodeId> = vec![c];
        let mut arm_edges = Vec::with_capacity(3);
        for arm in &x.arms {
            if arm.len() < 2 || arm[0] != c {
                return Err(bad("arm does not start at the center"));
            }
            let anchor = *arm.last().unwrap();
            if anchor >= self.node_in.len() || !self.is_real(anchor) {
                return Err(bad("anchor is not a real node"));
            }
            for &v in &arm[1..arm.len() - 1] {
                if v >= self.node_in.len() || self.node_in[v] {
                    return Err(bad("arm meets the subdivision internally"));
                }
            }
            all.extend_from_slice(&arm[1..]);
            let edges = self.path_edges(arm).map_err(|_| bad("arm is not a path of the graph"))?;
            arm_edges.push(edges);
        }
        if !self.distinct(&all) {
            return Err(bad("arms are not internally disjoint"));
        }
        self.node_in[c] = true;
        self.node_count += 1;
        self.deg[c] = 3;
        let mut created = false;
        for (arm, edges) in x.arms.iter().zip(&arm_edges) {
            self.deg[*arm.last().unwrap()] += 1;
            // add_chain marks inner nodes; the center is handled above
            for &v in &arm[1..arm.len() - 1] {
                self.node_in[v] = true;
                self.node_count += 1;
                self.deg[v] = 2;
            }
            for &e in edges {
                self.edge_in[e] = true;
                self.edge_count += 1;
            }
            let link = Link { nodes: arm.clone(), edges: edges.clone() };
            created |= self.bump(link.ends(), true);
            self.insert_link(link);
        }
        Ok(Applied { created_parallel: created })
    }

    /// Incremental link table equals a from-scratch recomputation and every
    /// bookkeeping field agrees with it.
    pub fn check_invariants(&self) -> Result<(), String> {
        let scratch = self.links_from_scratch().map_err(|e| e.to_string())?;
        let incremental = self.links();
        if scratch != incremental {
            return Err(format!("links differ: incremental {incremental:?} vs scratch {scratch:?}"));
        }
        let mut pairs: HashMap<(NodeId, NodeId), usize> = HashMap::new();
        for link in &incremental {
            *pairs.entry(link.ends()).or_insert(0) += 1;
            for &v in link.inner() {
                if self.deg[v] != 2 || !self.inner.contains(&v) {
                    return Err(format!("inner node {v} mis-tracked"));
                }
            }
            let (a, b) = link.ends();
            if !self.is_real(a) || !self.is_real(b) {
                return Err(format!("link endpoint of {link:?} is not real"));
            }
        }
        if pairs != self.parallel {
            return Err("parallel index out of sync".into());
        }
        let covered: usize = incremental.iter().map(|l| l.edges.len()).sum();
        if covered != self.edge_count {
            return Err("links do not partition the edges".into());
        }
        Ok(())
    }
}

/// Walks every link of the subgraph given by `edge_in`, starting from real
/// nodes in ascending order.
fn compute_links(host: &MultiGraph, edge_in: &[bool], deg: &[usize]) -> Result<Vec<Link>, StructureError> {
    let mut used = vec![false; edge_in.len()];
    let mut links = Vec::new();
    let mut covered = 0;
    let total = edge_in.iter().filter(|&&b| b).count();
    for r in 0..deg.len() {
        if deg[r] < 3 {
            continue;
        }
        for (e0, _) in host.incident(r) {
            if !edge_in[e0] || used[e0] {
                continue;
            }
            let mut nodes = vec![r];
            let mut edges = Vec::new();
            let (mut cur, mut e) = (r, e0);
            loop {
                used[e] = true;
                edges.push(e);
                let next = host.opposite(e, cur);
                nodes.push(next);
                if deg[next] >= 3 {
                    break;
                }
                let step = host.incident(next).find(|&(f, _)| edge_in[f] && !used[f]);
                match step {
                    Some((f, _)) => {
                        cur = next;
                        e = f;
                    }
                    None => return Err(StructureError::BadDegree(next, deg[next])),
                }
            }
            covered += edges.len();
            links.push(Link { nodes, edges });
        }
    }
    if covered != total {
        return Err(StructureError::PureCycle);
    }
    Ok(links)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn graph(edges: &[(u64, u64)]) -> MultiGraph {
        MultiGraph::from_labeled_edges(edges)
    }

    fn id(g: &MultiGraph, label: u64) -> NodeId {
        g.node_by_label(label).unwrap()
    }

    fn path(g: &MultiGraph, labels: &[u64]) -> BgPath {
        BgPath::new(labels.iter().map(|&l| id(g, l)).collect())
    }

    fn link_labels(g: &MultiGraph, s: &Subdivision) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> = s
            .links()
            .iter()
            .map(|l| {
                let mut v: Vec<u64> = l.nodes.iter().map(|&n| g.label(n)).collect();
                if v[0] > *v.last().unwrap() {
                    v.reverse();
                }
                v
            })
            .collect();
        out.sort();
        out
    }

    const K4: [(u64, u64); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

    #[test]
    fn k4_is_its_own_subdivision() {
        let g = graph(&K4);
        let all: Vec<EdgeId> = g.edges().collect();
        let s = Subdivision::new(&g, &all).unwrap();
        assert_eq!(s.real_nodes().count(), 4);
        assert_eq!(s.links().len(), 6);
        assert!(s.links().iter().all(|l| l.edges.len() == 1));
        assert!(s.is_smooth());
        s.check_invariants().unwrap();
    }

    #[test]
    fn subdivided_k4_has_long_links() {
        let g = graph(&[
            (1, 12), (12, 2), (1, 13), (13, 3), (1, 14), (14, 4),
            (2, 23), (23, 3), (2, 24), (24, 4), (3, 34), (34, 4),
        ]);
        let all: Vec<EdgeId> = g.edges().collect();
        let s = Subdivision::new(&g, &all).unwrap();
        assert_eq!(s.links().len(), 6);
        assert!(s.links().iter().all(|l| l.edges.len() == 2));
        assert_eq!(s.inner_nodes().count(), 6);
    }

    #[test]
    fn triangle_is_rejected() {
        let g = graph(&K4);
        let tri = [g.edge_between(0, 1).unwrap(), g.edge_between(1, 2).unwrap(), g.edge_between(0, 2).unwrap()];
        assert!(Subdivision::new(&g, &tri).is_err());
    }

    #[test]
    fn degree_one_is_rejected() {
        let g = graph(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (4, 5)]);
        let all: Vec<EdgeId> = g.edges().collect();
        assert!(matches!(Subdivision::new(&g, &all), Err(StructureError::BadDegree(_, 1))));
    }

    /// Counterexample graph: K4 on 1..4 plus node 5 joined to 1, 2, 3.
    fn counterexample() -> MultiGraph {
        graph(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (5, 1), (5, 2), (5, 3)])
    }

    #[test]
    fn counterexample_steps_via_bg_paths() {
        let g = counterexample();
        let k4: Vec<EdgeId> = (0..6).collect();
        let mut s = Subdivision::new(&g, &k4).unwrap();
        let applied = s.apply_bg_path(&path(&g, &[1, 5, 2])).unwrap();
        assert!(applied.created_parallel);
        assert_eq!(s.parallel_count(id(&g, 1), id(&g, 2)), 2);
        s.check_invariants().unwrap();

        let real_before = s.real_nodes().count();
        s.apply_bg_path(&path(&g, &[5, 3])).unwrap();
        assert_eq!(s.real_nodes().count(), real_before + 1);
        assert!(s.is_real(id(&g, 5)));
        assert!(s.covers_host());
        s.check_invariants().unwrap();
    }

    #[test]
    fn counterexample_by_expand() {
        let g = counterexample();
        let k4: Vec<EdgeId> = (0..6).collect();
        let mut s = Subdivision::new(&g, &k4).unwrap();
        let x = ExpandRecord {
            center: id(&g, 5),
            arms: [vec![id(&g, 5), id(&g, 1)], vec![id(&g, 5), id(&g, 2)], vec![id(&g, 5), id(&g, 3)]],
        };
        let applied = s.apply_expand(&x).unwrap();
        assert!(!applied.created_parallel);
        assert!(s.covers_host());
        assert!(s.is_real(id(&g, 5)));
        s.check_invariants().unwrap();
    }

    #[test]
    fn expand_rejections() {
        let g = counterexample();
        let k4: Vec<EdgeId> = (0..6).collect();
        let s = Subdivision::new(&g, &k4).unwrap();
        let c = id(&g, 5);
        let dup = ExpandRecord { center: c, arms: [vec![c, 0], vec![c, 0], vec![c, 2]] };
        assert!(s.clone().apply_expand(&dup).is_err());
        // arm passing through node 1 of S before reaching 4
        let through = ExpandRecord { center: c, arms: [vec![c, 0, 3], vec![c, 1], vec![c, 2]] };
        assert!(s.clone().apply_expand(&through).is_err());
    }

    // Letters of the staged-construction figure: e=1 a=2 b=3 c=4 d=5 f=6 g=7 h=8.
    const FIG_S1: [(u64, u64); 12] = [
        (2, 3), (3, 4), (2, 1), (1, 6), (5, 7), (7, 6), (2, 5), (4, 6), (4, 5), (1, 8), (8, 7), (2, 4),
    ];

    #[test]
    fn staged_figure_links() {
        let g = graph(&FIG_S1[..11]);
        let s0: Vec<EdgeId> = (0..9).collect();
        let mut s = Subdivision::new(&g, &s0).unwrap();
        assert_eq!(
            link_labels(&g, &s),
            vec![vec![2, 1, 6], vec![2, 3, 4], vec![2, 5], vec![4, 5], vec![4, 6], vec![5, 7, 6]]
        );
        let c0 = path(&g, &[1, 8, 7]);
        assert_eq!(s.check_bg_path(&c0), Ok(()));
        s.apply_bg_path(&c0).unwrap();
        // e-h-g, a-b-c, ae, ef, fc, cd, da, fg, gd
        assert_eq!(
            link_labels(&g, &s),
            vec![
                vec![1, 2], vec![1, 6], vec![1, 8, 7], vec![2, 3, 4], vec![2, 5],
                vec![4, 5], vec![4, 6], vec![5, 7], vec![6, 7],
            ]
        );
        s.check_invariants().unwrap();
    }

    #[test]
    fn condition_two_same_link() {
        // K4 with edge 1-2 subdivided twice: 1-5-6-2
        let g = graph(&[(1, 5), (5, 6), (6, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (5, 7), (7, 6)]);
        let s0: Vec<EdgeId> = (0..8).collect();
        let s = Subdivision::new(&g, &s0).unwrap();
        assert_eq!(s.check_bg_path(&path(&g, &[5, 7, 6])), Err(Violation::SameLink));
    }

    #[test]
    fn condition_three_parallel_links() {
        // nodes 1..4, a=10, b=11; S = G minus edge ab has parallel links 1-a-2, 1-b-2
        let g = graph(&[(1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (1, 10), (10, 2), (1, 11), (11, 2), (10, 11)]);
        let without_ab: Vec<EdgeId> = (0..9).collect();
        assert!(matches!(Subdivision::new(&g, &without_ab), Err(StructureError::ParallelLinks(..))));

        let s0: Vec<EdgeId> = (0..7).collect();
        let mut s = Subdivision::new(&g, &s0).unwrap();
        s.apply_bg_path(&path(&g, &[1, 11, 2])).unwrap();
        assert_eq!(s.check_bg_path(&path(&g, &[10, 11])), Err(Violation::ParallelLinks));
        s.check_invariants().unwrap();
    }

    #[test]
    fn condition_one_and_malformed() {
        let g = counterexample();
        let k4: Vec<EdgeId> = (0..6).collect();
        let s = Subdivision::new(&g, &k4).unwrap();
        assert_eq!(s.check_bg_path(&path(&g, &[1, 2])), Err(Violation::Intersects));
        assert_eq!(s.check_bg_path(&path(&g, &[1, 5])), Err(Violation::Intersects));
        assert_eq!(s.check_bg_path(&path(&g, &[4, 5, 1])), Err(Violation::NotAPath));
        assert_eq!(s.check_bg_path(&path(&g, &[1, 5, 1])), Err(Violation::NotAPath));
    }
}
