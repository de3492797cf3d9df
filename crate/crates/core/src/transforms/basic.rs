//! Basic sequences: no step creates two links with the same end pair.
//! Expand operations make this possible for every 3-connected graph.

use crate::error::TransformError;
use crate::graph::{MultiGraph, NodeId};
use crate::sequencer::{orient, PathRepresentation, Step};
use crate::subdivision::{BgPath, ExpandRecord, Subdivision};

const NONE: usize = usize::MAX;

fn invalid(msg: impl Into<String>) -> TransformError {
    TransformError::Invalid(msg.into())
}

/// A postponed path between two real nodes that would create parallel
/// links. Its inner nodes are not yet in the subdivision.
struct Pending {
    nodes: Vec<NodeId>,
}

impl Pending {
    /// Nodes from the inner node `w` to the endpoint `t`.
    fn part(&self, w: NodeId, t: NodeId) -> Vec<NodeId> {
        let k = self.nodes.iter().position(|&v| v == w).expect("inner node of pending path");
        if self.nodes[0] == t {
            self.nodes[..=k].iter().rev().copied().collect()
        } else {
            self.nodes[k..].to_vec()
        }
    }

    fn ends(&self) -> (NodeId, NodeId) {
        (self.nodes[0], *self.nodes.last().unwrap())
    }
}

struct Builder<'g> {
    s: Subdivision<'g>,
    out: Vec<Step>,
    pending: Vec<Option<Pending>>,
    /// Pending path owning each node, for inner nodes of pending paths.
    owner: Vec<usize>,
}

impl<'g> Builder<'g> {
    fn emit_path(&mut self, nodes: Vec<NodeId>) -> Result<(), TransformError> {
        let p = orient(&self.s, nodes);
        let applied = self.s.apply_bg_path(&p).map_err(|e| invalid(e.to_string()))?;
        if applied.created_parallel {
            return Err(invalid("rewritten path is not basic"));
        }
        self.out.push(Step::Path(p));
        Ok(())
    }

    fn emit_expand(&mut self, center: NodeId, arms: [Vec<NodeId>; 3]) -> Result<(), TransformError> {
        let x = ExpandRecord { center, arms }.sorted();
        let applied = self.s.apply_expand(&x).map_err(|e| invalid(e.to_string()))?;
        if applied.created_parallel {
            return Err(invalid("expand is not basic"));
        }
        self.out.push(Step::Expand(x));
        Ok(())
    }

    fn take(&mut self, idx: usize) -> Pending {
        let p = self.pending[idx].take().expect("live pending path");
        for &v in &p.nodes[1..p.nodes.len() - 1] {
            self.owner[v] = NONE;
        }
        p
    }

    /// A step `v .. w` ending at the inner node `w` of a pending path.
    fn merge(&mut self, mut c: Vec<NodeId>) -> Result<(), TransformError> {
        if self.owner[*c.last().unwrap()] == NONE {
            c.reverse();
        }
        let (v, w) = (c[0], *c.last().unwrap());
        let x1 = self.take(self.owner[w]);
        let (a, b) = x1.ends();
        // arm from w back along c to v
        let back: Vec<NodeId> = c.iter().rev().copied().collect();
        if self.owner[v] != NONE {
            let x2 = self.take(self.owner[v]);
            let (cc, dd) = x2.ends();
            let t = if a != cc && a != dd { a } else { b };
            let rest = if t == a { b } else { a };
            if t == cc || t == dd {
                return Err(invalid("step joins inner nodes of parallel paths"));
            }
            let mut third = c.clone();
            third.extend_from_slice(&x1.part(w, t)[1..]);
            self.emit_expand(v, [x2.part(v, cc), x2.part(v, dd), third])?;
            self.emit_path(x1.part(w, rest))
        } else if self.s.is_real(v) {
            if v == a || v == b {
                return Err(invalid("step joins a pending path to its own endpoint"));
            }
            self.emit_expand(w, [x1.part(w, a), x1.part(w, b), back])
        } else {
            let link = self.s.link_of_inner(v).ok_or_else(|| invalid("step endpoint outside S"))?.ends();
            let t = if a != link.0 && a != link.1 { a } else { b };
            if t == link.0 || t == link.1 {
                return Err(invalid("step joins inner nodes of parallel links"));
            }
            let rest = if t == a { b } else { a };
            let mut q1 = c.clone();
            q1.extend_from_slice(&x1.part(w, t)[1..]);
            self.emit_path(q1)?;
            self.emit_path(x1.part(w, rest))
        }
    }
}

/// Rewrites a certificate so that no step creates parallel links.
///
/// Paths that would create a parallel link are postponed until a later step
/// attaches to one of their inner nodes, and both are then emitted as an
/// expand or as two basic paths. Single edges of that kind go to the end.
pub fn to_basic(g: &MultiGraph, pr: &PathRepresentation) -> Result<PathRepresentation, TransformError> {
    let s = Subdivision::new(g, &pr.s0_edges).map_err(|e| invalid(e.to_string()))?;
    let mut b = Builder { s, out: Vec::with_capacity(pr.steps.len()), pending: Vec::new(), owner: vec![NONE; g.node_bound()] };
    let mut deferred: Vec<Vec<NodeId>> = Vec::new();
    for (j, step) in pr.steps.iter().enumerate() {
        let c = match step {
            Step::Path(p) => p.nodes.clone(),
            Step::Expand(_) => return Err(invalid(format!("step {j} is already an expand"))),
        };
        if c.len() < 2 || c.iter().any(|&v| v >= g.node_bound()) {
            return Err(invalid(format!("step {j} is malformed")));
        }
        let (x, y) = (c[0], *c.last().unwrap());
        if b.owner[x] != NONE || b.owner[y] != NONE {
            b.merge(c)?;
        } else if b.s.is_real(x) && b.s.is_real(y) && b.s.parallel_count(x, y) > 0 {
            if c.len() == 2 {
                deferred.push(c);
            } else {
                if let Some(p) = BgPath::new(c.clone()).inner().iter().find(|&&v| b.s.contains_node(v)) {
                    return Err(invalid(format!("step {j} meets S at {p}")));
                }
                let idx = b.pending.len();
                for &v in &c[1..c.len() - 1] {
                    b.owner[v] = idx;
                }
                b.pending.push(Some(Pending { nodes: c }));
            }
        } else {
            b.emit_path(c).map_err(|e| invalid(format!("step {j}: {e}")))?;
        }
    }
    if b.pending.iter().any(Option::is_some) {
        return Err(invalid("a postponed path never gained an attachment"));
    }
    for c in deferred {
        b.emit_path(c)?;
    }
    if !b.s.covers_host() {
        return Err(invalid("steps do not cover the graph"));
    }
    Ok(PathRepresentation { s0_edges: pr.s0_edges.clone(), steps: b.out, basic: true })
}

/// Splits every expand into two paths: the arms to the two smallest anchors
/// form one path through the center, the third arm follows.
pub fn from_basic(pr: &PathRepresentation) -> PathRepresentation {
    let mut steps = Vec::with_capacity(pr.steps.len() + pr.steps.len() / 4);
    for step in &pr.steps {
        match step {
            Step::Path(_) => steps.push(step.clone()),
            Step::Expand(x) => {
                let x = x.clone().sorted();
                let [a1, a2, a3] = x.arms;
                let mut through: Vec<NodeId> = a1.into_iter().rev().collect();
                through.extend_from_slice(&a2[1..]);
                steps.push(Step::Path(BgPath::new(through)));
                steps.push(Step::Path(BgPath::new(a3)));
            }
        }
    }
    PathRepresentation { s0_edges: pr.s0_edges.clone(), steps, basic: false }
}
