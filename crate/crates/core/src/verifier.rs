//! Certificate and witness checking.
//!
//! Certificates are checked by deleting the steps in reverse order and
//! smoothing as nodes drop to degree two. Only graph primitives are shared
//! with the search code.

use std::collections::HashMap;
use std::fmt;

use crate::graph::{EdgeId, MultiGraph, NodeId};
use crate::sequencer::{PathRepresentation, Step};
use crate::subdivision::Subdivision;
use crate::witness::Witness;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    TooFewNodes,
    LowDegree(NodeId),
    /// An `S0` entry is not an edge of the graph or is listed twice.
    BadS0Edge(EdgeId),
    /// A step is not a simple path or a well-formed expand record.
    NotAPath,
    /// An edge is used by two parts of the certificate.
    EdgeReused(NodeId, NodeId),
    /// An edge is not covered by the certificate.
    Uncovered(EdgeId),
    /// A step still spans two or more edges when it is removed.
    LongPath,
    /// The remaining edge of a step does not join its endpoints.
    EndpointMismatch,
    /// An endpoint ends with degree below two.
    EndpointDegree(NodeId),
    SameLink,
    ParallelLinks,
    /// A node of degree two cannot be smoothed.
    NotSmoothable(NodeId),
    BadExpand(&'static str),
    /// What remains is not a subdivision of `K4`.
    Residue,
    /// Basic mode: the step creates two links with the same endpoints.
    CreatesParallel,
    /// Basic mode: forward replay rejected the step.
    ReplayFailed(String),
    WitnessDoesNotHold,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::TooFewNodes => write!(f, "graph has fewer than four nodes"),
            Reason::LowDegree(v) => write!(f, "node {v} has fewer than three neighbours"),
            Reason::BadS0Edge(e) => write!(f, "S0 edge {e} is missing or repeated"),
            Reason::NotAPath => write!(f, "step is not a simple path"),
            Reason::EdgeReused(u, v) => write!(f, "edge {u}-{v} is used twice"),
            Reason::Uncovered(e) => write!(f, "edge {e} is not covered"),
            Reason::LongPath => write!(f, "step is longer than one edge at removal"),
            Reason::EndpointMismatch => write!(f, "remaining edge does not join the step endpoints"),
            Reason::EndpointDegree(v) => write!(f, "node {v} drops below degree two"),
            Reason::SameLink => write!(f, "endpoints lie on a common link"),
            Reason::ParallelLinks => write!(f, "endpoints are inner nodes of parallel links"),
            Reason::NotSmoothable(v) => write!(f, "node {v} cannot be smoothed"),
            Reason::BadExpand(msg) => write!(f, "expand: {msg}"),
            Reason::Residue => write!(f, "residue is not a subdivision of K4"),
            Reason::CreatesParallel => write!(f, "step creates parallel links"),
            Reason::ReplayFailed(msg) => write!(f, "replay failed: {msg}"),
            Reason::WitnessDoesNotHold => write!(f, "witness does not hold"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    /// Index of the offending step, if the failure belongs to one.
    pub step: Option<usize>,
    pub reason: Reason,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Some(i) => write!(f, "step {i}: {}", self.reason),
            None => write!(f, "{}", self.reason),
        }
    }
}

fn reject<T>(step: Option<usize>, reason: Reason) -> Result<T, Rejection> {
    Err(Rejection { step, reason })
}

/// Checks that `pr` builds the simplification of `g_raw`. In basic mode the
/// steps must also never create parallel links.
pub fn verify_certificate(g_raw: &MultiGraph, pr: &PathRepresentation, basic_mode: bool) -> Result<(), Rejection> {
    let (g, _) = g_raw.simplify();
    if g.node_count() < 4 {
        return reject(None, Reason::TooFewNodes);
    }
    if let Some(v) = g.nodes().find(|&v| g.degree(v) < 3) {
        return reject(None, Reason::LowDegree(v));
    }
    let owner = partition(&g, pr)?;
    Removal::new(&g, owner, pr.steps.len()).run(pr)?;
    if basic_mode {
        replay_basic(&g, pr)?;
    }
    Ok(())
}

/// Assigns every edge to `S0` (index `steps.len()`) or to the step using it.
fn partition(g: &MultiGraph, pr: &PathRepresentation) -> Result<Vec<usize>, Rejection> {
    const FREE: usize = usize::MAX;
    let z = pr.steps.len();
    let mut owner = vec![FREE; g.edge_bound()];
    let mut by_pair: HashMap<(NodeId, NodeId), EdgeId> = HashMap::with_capacity(g.edge_count());
    for e in g.edges() {
        let (u, v) = g.endpoints(e);
        by_pair.insert((u.min(v), u.max(v)), e);
    }
    for &e in &pr.s0_edges {
        if e >= g.edge_bound() || !g.is_edge_alive(e) || owner[e] != FREE {
            return reject(None, Reason::BadS0Edge(e));
        }
        owner[e] = z;
    }
    let mut stamp = vec![usize::MAX; g.node_bound()];
    for (j, step) in pr.steps.iter().enumerate() {
        let claim = |nodes: &[NodeId], owner: &mut Vec<usize>| -> Result<(), Rejection> {
            for w in nodes.windows(2) {
                let key = (w[0].min(w[1]), w[0].max(w[1]));
                let Some(&e) = by_pair.get(&key) else {
                    return reject(Some(j), Reason::NotAPath);
                };
                if owner[e] != FREE {
                    return reject(Some(j), Reason::EdgeReused(key.0, key.1));
                }
                owner[e] = j;
            }
            Ok(())
        };
        let mut fresh = |v: NodeId| {
            if v >= stamp.len() || !g.is_node_alive(v) || stamp[v] == j {
                false
            } else {
                stamp[v] = j;
                true
            }
        };
        match step {
            Step::Path(p) => {
                if p.nodes.len() < 2 || !p.nodes.iter().all(|&v| fresh(v)) {
                    return reject(Some(j), Reason::NotAPath);
                }
                claim(&p.nodes, &mut owner)?;
            }
            Step::Expand(x) => {
                if !fresh(x.center) {
                    return reject(Some(j), Reason::NotAPath);
                }
                for arm in &x.arms {
                    if arm.len() < 2 || arm[0] != x.center || !arm[1..].iter().all(|&v| fresh(v)) {
                        return reject(Some(j), Reason::NotAPath);
                    }
                }
                for arm in &x.arms {
                    claim(arm, &mut owner)?;
                }
            }
        }
    }
    if let Some(e) = g.edges().find(|&e| owner[e] == FREE) {
        return reject(None, Reason::Uncovered(e));
    }
    Ok(owner)
}

struct Removal {
    w: MultiGraph,
    owner: Vec<usize>,
    /// Live edge count per owner; the last slot is `S0`.
    live: Vec<usize>,
    /// Some live edge of each owner.
    any_edge: Vec<EdgeId>,
}

impl Removal {
    fn new(g: &MultiGraph, owner: Vec<usize>, z: usize) -> Removal {
        let mut live = vec![0; z + 1];
        let mut any_edge = vec![usize::MAX; z + 1];
        for e in g.edges() {
            live[owner[e]] += 1;
            any_edge[owner[e]] = e;
        }
        Removal { w: g.clone(), owner, live, any_edge }
    }

    fn run(mut self, pr: &PathRepresentation) -> Result<(), Rejection> {
        for j in (0..pr.steps.len()).rev() {
            match &pr.steps[j] {
                Step::Path(p) => self.remove_path(j, p.first(), p.last())?,
                Step::Expand(x) => self.remove_expand(j, x.center, x.anchors())?,
            }
        }
        self.residue()
    }

    fn remove_path(&mut self, j: usize, a: NodeId, b: NodeId) -> Result<(), Rejection> {
        let err = |r| reject(Some(j), r);
        if self.live[j] != 1 {
            return err(Reason::LongPath);
        }
        let e = self.any_edge[j];
        let (u, v) = self.w.endpoints(e);
        if (u, v) != (a, b) && (v, u) != (a, b) {
            return err(Reason::EndpointMismatch);
        }
        self.w.remove_edge(e).expect("live edge");
        self.live[j] = 0;
        for x in [a, b] {
            if self.w.degree(x) < 2 {
                return err(Reason::EndpointDegree(x));
            }
        }
        let touches = |w: &MultiGraph, x: NodeId, y: NodeId| {
            w.two_edges(x).is_some_and(|pair| pair.iter().any(|&(_, t)| t == y))
        };
        if touches(&self.w, a, b) || touches(&self.w, b, a) {
            return err(Reason::SameLink);
        }
        if let (Some(na), Some(nb)) = (self.w.two_edges(a), self.w.two_edges(b)) {
            let mut na = [na[0].1, na[1].1];
            let mut nb = [nb[0].1, nb[1].1];
            na.sort_unstable();
            nb.sort_unstable();
            if na == nb {
                return err(Reason::ParallelLinks);
            }
        }
        for x in [a, b] {
            if self.w.degree(x) == 2 {
                self.smooth(x).or_else(&err)?;
            }
        }
        Ok(())
    }

    fn smooth(&mut self, x: NodeId) -> Result<(), Reason> {
        let [(e, _), (f, _)] = self.w.two_edges(x).expect("degree two");
        let o = self.owner[e];
        if self.owner[f] != o {
            return Err(Reason::NotSmoothable(x));
        }
        let Some(new) = self.w.smooth(x, None).expect("live node") else {
            return Err(Reason::NotSmoothable(x));
        };
        if new >= self.owner.len() {
            self.owner.resize(new + 1, usize::MAX);
        }
        self.owner[new] = o;
        self.live[o] -= 1;
        self.any_edge[o] = new;
        Ok(())
    }

    fn remove_expand(&mut self, j: usize, c: NodeId, anchors: [NodeId; 3]) -> Result<(), Rejection> {
        let err = |msg| reject(Some(j), Reason::BadExpand(msg));
        if self.live[j] != 3 {
            return reject(Some(j), Reason::LongPath);
        }
        if self.w.degree(c) != 3 {
            return err("center does not have degree three");
        }
        let mut ends: Vec<NodeId> = Vec::with_capacity(3);
        for (e, t) in self.w.incident(c) {
            if self.owner[e] != j {
                return err("center carries a foreign edge");
            }
            ends.push(t);
        }
        ends.sort_unstable();
        let mut want = anchors;
        want.sort_unstable();
        if ends != want {
            return err("arms do not end at the anchors");
        }
        self.w.remove_node(c).expect("live node");
        self.live[j] = 0;
        if anchors.iter().any(|&a| self.w.degree(a) < 3) {
            return err("anchor is not a branch node");
        }
        Ok(())
    }

    fn residue(mut self) -> Result<(), Rejection> {
        let nodes: Vec<NodeId> = self.w.nodes().collect();
        for v in nodes {
            if self.w.degree(v) == 2 {
                self.smooth(v).or_else(|r| reject(None, r))?;
            }
        }
        let w = &self.w;
        if w.node_count() != 4 || w.edge_count() != 6 || !w.is_simple() || w.nodes().any(|v| w.degree(v) != 3) {
            return reject(None, Reason::Residue);
        }
        Ok(())
    }
}

fn replay_basic(g: &MultiGraph, pr: &PathRepresentation) -> Result<(), Rejection> {
    let mut s = Subdivision::new(g, &pr.s0_edges).or_else(|e| reject(None, Reason::ReplayFailed(e.to_string())))?;
    for (j, step) in pr.steps.iter().enumerate() {
        let applied = match step {
            Step::Path(p) => s.apply_bg_path(p),
            Step::Expand(x) => s.apply_expand(x),
        }
        .or_else(|e| reject(Some(j), Reason::ReplayFailed(e.to_string())))?;
        if applied.created_parallel {
            return reject(Some(j), Reason::CreatesParallel);
        }
    }
    Ok(())
}

/// Checks a refutation against the simplification of `g_raw`.
pub fn verify_witness(g_raw: &MultiGraph, w: &Witness) -> Result<(), Rejection> {
    let (g, _) = g_raw.simplify();
    let alive = |v: NodeId| v < g.node_bound() && g.is_node_alive(v);
    let holds = match *w {
        Witness::TooFewNodes => g.node_count() < 4,
        Witness::LowDegree(v) => alive(v) && g.degree(v) < 3,
        Witness::Disconnected => g.connected_components().len() > 1,
        Witness::CutVertex(v) => alive(v) && g.components_avoiding(&[v]).len() > 1,
        Witness::SeparationPair(u, v) => {
            g.node_count() > 3 && alive(u) && alive(v) && u != v && g.components_avoiding(&[u, v]).len() > 1
        }
    };
    if holds {
        Ok(())
    } else {
        reject(None, Reason::WitnessDoesNotHold)
    }
}
