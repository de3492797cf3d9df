//! Grows a `K4`-subdivision into the whole graph one BG-path at a time.

use crate::error::CertifyError;
use crate::graph::{EdgeId, MultiGraph, NodeId, SimplifyReport};
use crate::k4;
use crate::sparsify::sparsify3;
use crate::subdivision::{BgPath, ExpandRecord, Subdivision};
use crate::witness::Witness;

/// One construction step.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Step {
    Path(BgPath),
    Expand(ExpandRecord),
}

/// `S0` and the ordered steps that grow it into `G`.
///
/// Node ids refer to the simplified input graph. The edges of `S0` and of the
/// steps partition its edge set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathRepresentation {
    /// Ascending.
    pub s0_edges: Vec<EdgeId>,
    pub steps: Vec<Step>,
    /// Claims that no step creates parallel links.
    pub basic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Certified(PathRepresentation),
    Refuted(Witness),
}

#[derive(Debug, Clone)]
pub struct CertifyResult {
    pub verdict: Verdict,
    /// The simplified input; all ids in the verdict refer to it.
    pub graph: MultiGraph,
    pub simplify_report: SimplifyReport,
    /// Edges the sparsifier dropped, appended as single-edge steps.
    pub sparsifier_leftover: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Edge ids of the simplified graph to start from instead of a found `K4`.
    pub prescribed_s0: Option<Vec<EdgeId>>,
    pub want_basic: bool,
    pub sparsify: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { prescribed_s0: None, want_basic: false, sparsify: true }
    }
}

/// Orients a BG-path: from its only endpoint that is inner in `s`, otherwise
/// from the smaller node id.
pub fn orient(s: &Subdivision<'_>, nodes: Vec<NodeId>) -> BgPath {
    let inner = |v: NodeId| s.contains_node(v) && !s.is_real(v);
    let (x, y) = (nodes[0], *nodes.last().expect("non-empty path"));
    let flip = match (inner(x), inner(y)) {
        (false, true) => true,
        (true, false) => false,
        _ => x > y,
    };
    let p = BgPath::new(nodes);
    if flip {
        p.reversed()
    } else {
        p
    }
}

/// Reusable search state for one host graph.
pub struct Searcher<'h> {
    host: &'h MultiGraph,
    adj: Vec<Vec<(EdgeId, NodeId)>>,
    mark: Vec<u32>,
    round: u32,
}

impl<'h> Searcher<'h> {
    pub fn new(host: &'h MultiGraph) -> Self {
        let mut adj = vec![Vec::new(); host.node_bound()];
        for v in host.nodes() {
            let mut list: Vec<(EdgeId, NodeId)> = host.incident(v).filter(|&(_, w)| w != v).collect();
            list.sort_unstable();
            adj[v] = list;
        }
        Searcher { host, adj, mark: vec![0; host.node_bound()], round: 0 }
    }

    fn next_round(&mut self) -> u32 {
        self.round += 1;
        if self.round == u32::MAX {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.round = 1;
        }
        self.round
    }

    /// A BG-path for `s`, or a witness that the host is not 3-connected.
    ///
    /// Panics if `s` already covers the host or belongs to another host.
    pub fn find(&mut self, s: &Subdivision<'_>) -> Result<BgPath, Witness> {
        assert!(std::ptr::eq(s.host(), self.host), "subdivision of a different host");
        assert!(!s.covers_host(), "subdivision already covers the host");
        match s.inner_nodes().next() {
            Some(x) => self.search_inner(s, x),
            None => self.search_smooth(s),
        }
    }

    fn search_inner(&mut self, s: &Subdivision<'_>, x: NodeId) -> Result<BgPath, Witness> {
        let (a, b) = s.link_of_inner(x).expect("inner node has a link").ends();
        let on_t = |v: NodeId| s.link_of_inner(v).is_some_and(|l| l.ends() == (a, b));
        let round = self.next_round();
        self.mark[a] = round;
        self.mark[b] = round;
        self.mark[x] = round;
        let mut stack: Vec<(NodeId, usize)> = vec![(x, 0)];
        let mut target = None;
        'dfs: while let Some(top) = stack.last_mut() {
            let u = top.0;
            let Some(&(_, w)) = self.adj[u].get(top.1) else {
                stack.pop();
                continue;
            };
            top.1 += 1;
            if self.mark[w] == round {
                continue;
            }
            self.mark[w] = round;
            if s.contains_node(w) && !on_t(w) {
                target = Some(w);
                break 'dfs;
            }
            stack.push((w, 0));
        }
        let Some(y) = target else {
            return Err(Witness::pair(a, b));
        };
        let start = stack.iter().rposition(|&(v, _)| on_t(v)).expect("x lies on T");
        let mut nodes: Vec<NodeId> = stack[start..].iter().map(|&(v, _)| v).collect();
        nodes.push(y);
        Ok(orient(s, nodes))
    }

    fn search_smooth(&mut self, s: &Subdivision<'_>) -> Result<BgPath, Witness> {
        let x = self
            .host
            .nodes()
            .find(|&v| s.contains_node(v) && self.adj[v].iter().any(|&(e, _)| !s.contains_edge(e)))
            .expect("a connected host larger than S has an edge leaving S");
        let round = self.next_round();
        self.mark[x] = round;
        let mut stack: Vec<(NodeId, usize)> = vec![(x, 0)];
        while let Some(top) = stack.last_mut() {
            let u = top.0;
            let Some(&(e, w)) = self.adj[u].get(top.1) else {
                stack.pop();
                continue;
            };
            top.1 += 1;
            if s.contains_edge(e) || self.mark[w] == round {
                continue;
            }
            self.mark[w] = round;
            if s.contains_node(w) {
                let mut nodes: Vec<NodeId> = stack.iter().map(|&(v, _)| v).collect();
                nodes.push(w);
                return Ok(orient(s, nodes));
            }
            stack.push((w, 0));
        }
        Err(Witness::CutVertex(x))
    }
}

/// One-shot form of [`Searcher::find`].
pub fn find_bg_path(s: &Subdivision<'_>) -> Result<BgPath, Witness> {
    Searcher::new(s.host()).find(s)
}

/// Decides whether `g_raw` is 3-connected and returns the evidence.
pub fn certify(g_raw: &MultiGraph, opts: &CertifyOptions) -> Result<CertifyResult, CertifyError> {
    let (g, simplify_report) = g_raw.simplify();
    if let Some(s0) = &opts.prescribed_s0 {
        Subdivision::new(&g, s0)?;
    }
    let mut result = CertifyResult {
        verdict: Verdict::Refuted(Witness::TooFewNodes),
        graph: MultiGraph::new(),
        simplify_report,
        sparsifier_leftover: Vec::new(),
    };
    if let Err(w) = k4::gate(&g) {
        result.verdict = Verdict::Refuted(w);
        result.graph = g;
        return Ok(result);
    }
    let (mut verdict, mut leftover) = grow(&g, opts, opts.sparsify)?;
    if let Verdict::Refuted(w) = verdict {
        if !w.holds_in(&g) {
            if !opts.sparsify {
                return Err(CertifyError::Internal(format!("witness {w:?} does not hold")));
            }
            (verdict, leftover) = grow(&g, opts, false)?;
            if let Verdict::Refuted(w) = verdict {
                if !w.holds_in(&g) {
                    return Err(CertifyError::Internal(format!("witness {w:?} does not hold")));
                }
            }
        }
    }
    if opts.want_basic {
        if let Verdict::Certified(pr) = verdict {
            verdict = Verdict::Certified(crate::transforms::to_basic(&g, &pr)?);
        }
    }
    result.verdict = verdict;
    result.sparsifier_leftover = leftover;
    result.graph = g;
    Ok(result)
}

fn grow(g: &MultiGraph, opts: &CertifyOptions, sparsify: bool) -> Result<(Verdict, Vec<EdgeId>), CertifyError> {
    let mut h = if sparsify { sparsify3(g).0 } else { g.clone() };
    if let Some(s0) = &opts.prescribed_s0 {
        for &e in s0 {
            if !h.is_edge_alive(e) {
                let (u, v) = g.endpoints(e);
                h.add_edge_with_id(e, u, v).map_err(|err| CertifyError::Internal(err.to_string()))?;
            }
        }
    }
    let mut s0_edges = match &opts.prescribed_s0 {
        Some(s0) => s0.clone(),
        None => match k4::find_k4_edges(&h) {
            Ok(found) => found.edges,
            Err(w) => return Ok((Verdict::Refuted(w), Vec::new())),
        },
    };
    s0_edges.sort_unstable();
    let mut s = Subdivision::new(&h, &s0_edges)?;
    let mut searcher = Searcher::new(&h);
    let mut steps = Vec::new();
    while !s.covers_host() {
        match searcher.find(&s) {
            Ok(p) => {
                s.apply_bg_path(&p).map_err(|e| CertifyError::Internal(e.to_string()))?;
                steps.push(Step::Path(p));
            }
            Err(w) => return Ok((Verdict::Refuted(w), Vec::new())),
        }
    }
    let leftover: Vec<EdgeId> = g.edges().filter(|&e| !h.is_edge_alive(e)).collect();
    for &e in &leftover {
        let (u, v) = g.endpoints(e);
        steps.push(Step::Path(BgPath::new(vec![u.min(v), u.max(v)])));
    }
    let pr = PathRepresentation { s0_edges, steps, basic: false };
    Ok((Verdict::Certified(pr), leftover))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{gen_3_connected, graph_from_mask, is_3_connected_brute, OpMix};

    const K4: [(u64, u64); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

    fn counterexample() -> MultiGraph {
        let mut edges = K4.to_vec();
        edges.extend([(5, 1), (5, 2), (5, 3)]);
        MultiGraph::from_labeled_edges(&edges)
    }

    fn paths(pr: &PathRepresentation) -> Vec<Vec<NodeId>> {
        pr.steps
            .iter()
            .map(|s| match s {
                Step::Path(p) => p.nodes.clone(),
                Step::Expand(_) => panic!("unexpected expand"),
            })
            .collect()
    }

    #[test]
    fn k4_needs_no_steps() {
        let g = MultiGraph::from_labeled_edges(&K4);
        let res = certify(&g, &CertifyOptions::default()).unwrap();
        let Verdict::Certified(pr) = res.verdict else { panic!() };
        assert!(pr.steps.is_empty());
        assert_eq!(pr.s0_edges, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn smooth_case_search_order() {
        let g = counterexample();
        let s = Subdivision::new(&g, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(find_bg_path(&s).unwrap().nodes, vec![0, 4, 1]);
    }

    #[test]
    fn counterexample_with_prescribed_k4() {
        let g = counterexample();
        let opts = CertifyOptions { prescribed_s0: Some(vec![0, 1, 2, 3, 4, 5]), ..Default::default() };
        let res = certify(&g, &opts).unwrap();
        let Verdict::Certified(pr) = res.verdict else { panic!() };
        assert_eq!(paths(&pr), vec![vec![0, 4, 1], vec![4, 2]]);
    }

    #[test]
    fn staged_figure_first_path() {
        // e=1 a=2 b=3 c=4 d=5 f=6 g=7 h=8
        let g = MultiGraph::from_labeled_edges(&[
            (2, 3), (3, 4), (2, 1), (1, 6), (5, 7), (7, 6), (2, 5), (4, 6), (4, 5), (1, 8), (8, 7),
        ]);
        let s = Subdivision::new(&g, &[0, 1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        let p = find_bg_path(&s).unwrap();
        let labels: Vec<u64> = p.nodes.iter().map(|&v| g.label(v)).collect();
        assert_eq!(labels, vec![1, 8, 7]);
    }

    #[test]
    fn pendant_path_gives_cut_vertex() {
        let mut edges = K4.to_vec();
        edges.push((1, 5));
        let g = MultiGraph::from_labeled_edges(&edges);
        let s = Subdivision::new(&g, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(find_bg_path(&s).unwrap_err(), Witness::CutVertex(0));
    }

    #[test]
    fn k4_minus_edge_is_refuted() {
        let g = MultiGraph::from_labeled_edges(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]);
        let res = certify(&g, &CertifyOptions::default()).unwrap();
        let Verdict::Refuted(w) = res.verdict else { panic!() };
        assert!(w.holds_in(&res.graph));
    }

    #[test]
    fn multigraph_inputs_use_their_simplification() {
        let mut edges = K4.to_vec();
        edges.extend([(1, 2), (3, 3)]);
        let res = certify(&MultiGraph::from_labeled_edges(&edges), &CertifyOptions::default()).unwrap();
        assert!(matches!(res.verdict, Verdict::Certified(_)));
        assert_eq!(res.simplify_report.removed_self_loops, vec![7]);
    }

    #[test]
    fn five_node_graphs_agree_with_brute_force() {
        for mask in 0..1024 {
            let g = graph_from_mask(5, mask);
            let res = certify(&g, &CertifyOptions::default()).unwrap();
            match res.verdict {
                Verdict::Certified(_) => assert!(is_3_connected_brute(&g), "mask {mask}"),
                Verdict::Refuted(w) => {
                    assert!(!is_3_connected_brute(&g), "mask {mask}");
                    assert!(w.holds_in(&res.graph));
                }
            }
        }
    }

    #[test]
    fn partition_on_generated_graphs() {
        for seed in 0..50 {
            let g = gen_3_connected(6 + seed as usize, seed, OpMix::default());
            for sparsify in [true, false] {
                let opts = CertifyOptions { sparsify, ..Default::default() };
                let res = certify(&g, &opts).unwrap();
                let Verdict::Certified(pr) = res.verdict else { panic!("seed {seed}") };
                let mut covered = pr.s0_edges.len();
                for step in &pr.steps {
                    if let Step::Path(p) = step {
                        covered += p.len();
                    }
                }
                assert_eq!(covered, g.edge_count());
                assert!(pr.steps.len() <= g.edge_count());
            }
        }
    }
}
