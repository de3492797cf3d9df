//! Brute-force ground truth and generators for tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

use crate::graph::{MultiGraph, NodeId};
use crate::sequencer::{orient, PathRepresentation, Step};
use crate::subdivision::Subdivision;

/// 3-connectivity by definition: more than three nodes and no pair of nodes
/// whose deletion disconnects the rest. `O(n^2 (n + m))`.
pub fn is_3_connected_brute(g: &MultiGraph) -> bool {
    let nodes: Vec<usize> = g.nodes().collect();
    if nodes.len() < 4 {
        return false;
    }
    for (i, &u) in nodes.iter().enumerate() {
        for &v in &nodes[i + 1..] {
            if g.components_avoiding(&[u, v]).len() != 1 {
                return false;
            }
        }
    }
    true
}

/// Relative weights of the three BG-operations used by [`gen_3_connected`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpMix {
    /// Add an edge between two non-adjacent nodes.
    pub add_edge: u32,
    /// Subdivide an edge and join the new node to a third node.
    pub subdivide_one: u32,
    /// Subdivide two distinct edges and join the new nodes.
    pub subdivide_two: u32,
}

impl Default for OpMix {
    fn default() -> Self {
        OpMix { add_edge: 1, subdivide_one: 1, subdivide_two: 1 }
    }
}

impl std::str::FromStr for OpMix {
    type Err = String;

    /// Parses `a:b:c`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<u32> = s
            .split(':')
            .map(|p| p.trim().parse::<u32>().map_err(|_| format!("bad weight {p:?}")))
            .collect::<Result<_, _>>()?;
        match parts.as_slice() {
            [a, b, c] if b + c > 0 => Ok(OpMix { add_edge: *a, subdivide_one: *b, subdivide_two: *c }),
            [_, _, _] => Err("at least one node-creating weight must be positive".into()),
            _ => Err(format!("expected a:b:c, got {s:?}")),
        }
    }
}

/// Random simple 3-connected graph on `n_target` nodes, labelled `1..=n`.
///
/// Starts at `K4` and applies seeded BG-operations that keep the graph simple.
/// Panics if `n_target < 4` or both node-creating weights are zero.
pub fn gen_3_connected(n_target: usize, seed: u64, mix: OpMix) -> MultiGraph {
    assert!(n_target >= 4, "need at least four nodes");
    assert!(mix.subdivide_one + mix.subdivide_two > 0, "no node-creating operation");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(u64, u64)> = vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
    let mut adjacent: HashSet<(u64, u64)> = edges.iter().copied().collect();
    let key = |u: u64, v: u64| (u.min(v), u.max(v));
    let mut n: u64 = 4;

    while (n as usize) < n_target {
        let can_two = n as usize + 2 <= n_target;
        let weights = [
            mix.add_edge,
            mix.subdivide_one,
            if can_two { mix.subdivide_two } else { 0 },
        ];
        let total: u32 = weights.iter().sum();
        let weights = if total == 0 { [0, 1, 0] } else { weights };
        let total: u32 = weights.iter().sum();
        let mut pick = rng.gen_range(0..total);
        let op = weights.iter().position(|&w| {
            if pick < w {
                true
            } else {
                pick -= w;
                false
            }
        });
        match op {
            Some(0) => {
                if adjacent.len() as u64 == n * (n - 1) / 2 {
                    continue;
                }
                for _ in 0..32 {
                    let u = rng.gen_range(1..=n);
                    let v = rng.gen_range(1..=n);
                    if u != v && !adjacent.contains(&key(u, v)) {
                        edges.push((u, v));
                        adjacent.insert(key(u, v));
                        break;
                    }
                }
            }
            Some(1) => {
                let i = rng.gen_range(0..edges.len());
                let (p, q) = edges[i];
                let x = n + 1;
                let candidates: Vec<u64> = (1..=n).filter(|&y| y != p && y != q).collect();
                let y = *candidates.choose(&mut rng).expect("K4 has a third node");
                subdivide(&mut edges, &mut adjacent, i, x);
                edges.push((x, y));
                adjacent.insert(key(x, y));
                n += 1;
            }
            _ => {
                let i = rng.gen_range(0..edges.len());
                let mut j = rng.gen_range(0..edges.len() - 1);
                if j >= i {
                    j += 1;
                }
                let (x, y) = (n + 1, n + 2);
                subdivide(&mut edges, &mut adjacent, i, x);
                subdivide(&mut edges, &mut adjacent, j, y);
                edges.push((x, y));
                adjacent.insert(key(x, y));
                n += 2;
            }
        }
    }
    MultiGraph::from_labeled_edges(&edges)
}

fn subdivide(edges: &mut Vec<(u64, u64)>, adjacent: &mut HashSet<(u64, u64)>, i: usize, x: u64) {
    let (p, q) = edges[i];
    adjacent.remove(&(p.min(q), p.max(q)));
    edges[i] = (p, x);
    edges.push((x, q));
    adjacent.insert((p.min(x), p.max(x)));
    adjacent.insert((q.min(x), q.max(x)));
}

/// Erdős-Rényi `G(n, p)` on labels `1..=n`, isolated nodes included.
pub fn gnp(n: usize, p: f64, seed: u64) -> MultiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<u64> = (1..=n as u64).collect();
    let mut g = MultiGraph::with_labels(&labels).expect("distinct labels");
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// The labelled simple graph on `n` nodes whose edges are the set bits of
/// `mask` over pairs `(u, v)`, `u < v`, in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> MultiGraph {
    let labels: Vec<u64> = (1..=n as u64).collect();
    let mut g = MultiGraph::with_labels(&labels).expect("distinct labels");
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v);
            }
            bit += 1;
        }
    }
    g
}

/// A certificate grown forward from `K4` by random BG-paths, together with
/// the graph it builds. With probability `nonbasic_bias` a step is drawn
/// between the ends of an existing link, which creates parallel links.
///
/// Node `i` has label `i + 1`; `S0` is the `K4` on labels `1..=4`.
pub fn gen_certificate(n_target: usize, seed: u64, nonbasic_bias: f64) -> (MultiGraph, PathRepresentation) {
    assert!(n_target >= 4, "need at least four nodes");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = MultiGraph::from_labeled_edges(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
    let mut steps = Vec::new();
    loop {
        let s = grown(&h, &steps);
        let inner: Vec<NodeId> = s.inner_nodes().collect();
        let growing = h.node_count() < n_target;
        if !growing && inner.is_empty() {
            break;
        }
        let links = s.links();
        let nodes: Vec<NodeId> = h.nodes().collect();
        let real: Vec<NodeId> = s.real_nodes().collect();
        for _attempt in 0..200 {
            let (x, y) = if !growing {
                (*inner.choose(&mut rng).unwrap(), *nodes.choose(&mut rng).unwrap())
            } else if rng.gen_bool(nonbasic_bias) {
                let link = links.choose(&mut rng).unwrap();
                link.ends()
            } else {
                (*nodes.choose(&mut rng).unwrap(), *nodes.choose(&mut rng).unwrap())
            };
            let mut k: usize = if growing { rng.gen_range(0..3) } else { 0 };
            k = k.min(n_target.saturating_sub(h.node_count()));
            if x == y || (k == 0 && h.edge_between(x, y).is_some()) {
                continue;
            }
            if k == 0 && !growing && !s.is_real(y) && !real.is_empty() && rng.gen_bool(0.5) {
                continue;
            }
            let mut trial = h.clone();
            let mut path = vec![x];
            for _ in 0..k {
                let label = trial.node_bound() as u64 + 1;
                path.push(trial.add_node(label));
            }
            path.push(y);
            for w in path.windows(2) {
                trial.add_edge(w[0], w[1]);
            }
            let ts = grown(&trial, &steps);
            let p = orient(&ts, path);
            if ts.check_bg_path(&p).is_ok() {
                h = trial;
                steps.push(Step::Path(p));
                break;
            }
        }
    }
    let pr = PathRepresentation { s0_edges: (0..6).collect(), steps, basic: false };
    (h, pr)
}

fn grown<'h>(h: &'h MultiGraph, steps: &[Step]) -> Subdivision<'h> {
    let mut s = Subdivision::new(h, &[0, 1, 2, 3, 4, 5]).expect("K4");
    for step in steps {
        if let Step::Path(p) = step {
            s.apply_bg_path(p).expect("generated step");
        }
    }
    s
}

/// Certificate mutations that always make a valid certificate invalid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mutation {
    DropStep,
    DuplicateStep,
    /// Moves the last node of a path step to a node not adjacent to the
    /// node before it.
    RedirectEndpoint,
    /// Swaps a step with a later step that ends at one of its inner nodes.
    SwapDependent,
    DeleteS0Edge,
}

impl Mutation {
    pub const ALL: [Mutation; 5] = [
        Mutation::DropStep,
        Mutation::DuplicateStep,
        Mutation::RedirectEndpoint,
        Mutation::SwapDependent,
        Mutation::DeleteS0Edge,
    ];
}

/// Applies `kind` at a seeded position, or `None` if it does not apply.
pub fn mutate_certificate(
    g: &MultiGraph,
    pr: &PathRepresentation,
    kind: Mutation,
    seed: u64,
) -> Option<PathRepresentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = pr.clone();
    let z = pr.steps.len();
    match kind {
        Mutation::DropStep => {
            if z == 0 {
                return None;
            }
            out.steps.remove(rng.gen_range(0..z));
        }
        Mutation::DuplicateStep => {
            if z == 0 {
                return None;
            }
            let i = rng.gen_range(0..z);
            let j = rng.gen_range(0..=z);
            out.steps.insert(j, pr.steps[i].clone());
        }
        Mutation::RedirectEndpoint => {
            let candidates: Vec<usize> = (0..z).filter(|&i| matches!(pr.steps[i], Step::Path(_))).collect();
            let &i = candidates.choose(&mut rng)?;
            let Step::Path(p) = &mut out.steps[i] else { unreachable!() };
            let prev = p.nodes[p.nodes.len() - 2];
            let last = p.last();
            let near = g.neighbors(prev);
            let options: Vec<NodeId> =
                g.nodes().filter(|&v| v != prev && v != last && near.binary_search(&v).is_err()).collect();
            let &v = options.choose(&mut rng)?;
            *p.nodes.last_mut().unwrap() = v;
        }
        Mutation::SwapDependent => {
            let mut pairs = Vec::new();
            for (i, step) in pr.steps.iter().enumerate() {
                let created: Vec<NodeId> = match step {
                    Step::Path(p) => p.inner().to_vec(),
                    Step::Expand(x) => {
                        let mut v = vec![x.center];
                        for arm in &x.arms {
                            v.extend_from_slice(&arm[1..arm.len() - 1]);
                        }
                        v
                    }
                };
                for (j, later) in pr.steps.iter().enumerate().skip(i + 1) {
                    let ends: Vec<NodeId> = match later {
                        Step::Path(p) => vec![p.first(), p.last()],
                        Step::Expand(x) => x.anchors().to_vec(),
                    };
                    if ends.iter().any(|v| created.contains(v)) {
                        pairs.push((i, j));
                    }
                }
            }
            let &(i, j) = pairs.choose(&mut rng)?;
            out.steps.swap(i, j);
        }
        Mutation::DeleteS0Edge => {
            if pr.s0_edges.is_empty() {
                return None;
            }
            out.s0_edges.remove(rng.gen_range(0..pr.s0_edges.len()));
        }
    }
    Some(out)
}
