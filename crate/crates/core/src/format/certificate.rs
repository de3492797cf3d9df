//! Text forms of certificates, witnesses, edge representations and
//! contraction sequences. Nodes are written with their input labels.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::ParseError;
use crate::graph::{EdgeId, MultiGraph, NodeId};
use crate::sequencer::{PathRepresentation, Step};
use crate::subdivision::{BgPath, ExpandRecord};
use crate::transforms::{EdgeRepresentation, Op};
use crate::witness::Witness;

pub const CERT_HEADER: &str = "tricert v1";
pub const EDGE_HEADER: &str = "tricert-edge v1";

type Tokens<'a> = Box<dyn Iterator<Item = (usize, Vec<&'a str>)> + 'a>;

/// Meaningful lines with their 1-based numbers.
struct Lines<'a> {
    inner: std::iter::Peekable<Tokens<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Tokens<'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
                .filter(|(_, t)| !t.is_empty()),
        );
        Lines { inner: it.peekable(), last: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        match self.inner.next() {
            Some(item) => {
                self.last = item.0;
                Ok(item)
            }
            None => Err(ParseError::syntax(self.last, format!("unexpected end of input, expected {what}"))),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.inner.next() {
            None => Ok(()),
            Some((line, _)) => Err(ParseError::syntax(line, "trailing content")),
        }
    }

    /// A `<keyword> <count>` line.
    fn section(&mut self, keyword: &str) -> Result<usize, ParseError> {
        let (line, toks) = self.next(keyword)?;
        match toks.as_slice() {
            [k, c] if *k == keyword => num(c, line),
            _ => Err(ParseError::syntax(line, format!("expected `{keyword} <count>`"))),
        }
    }
}

fn num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, ParseError> {
    tok.parse::<T>().map_err(|_| ParseError::syntax(line, format!("expected a non-negative integer, found {tok:?}")))
}

fn nums<T: std::str::FromStr>(toks: &[&str], line: usize) -> Result<Vec<T>, ParseError> {
    toks.iter().map(|t| num(t, line)).collect()
}

/// A step as written, before labels are resolved against a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawStep {
    Path(Vec<u64>),
    Expand { center: u64, arms: [Vec<u64>; 3] },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCertificate {
    pub n: usize,
    pub m: usize,
    pub s0: Vec<(u64, u64)>,
    pub steps: Vec<RawStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RawWitness {
    TooSmall,
    LowDegree(u64),
    Disconnected,
    CutVertex(u64),
    SeparationPair(u64, u64),
}

/// Any document the tools read besides graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Certificate(RawCertificate),
    Witness(RawWitness),
    EdgeRep(EdgeRepresentation),
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut lines = Lines::new(text);
    let first = lines.inner.peek().map(|(_, t)| t.join(" "));
    match first.as_deref() {
        Some(CERT_HEADER) => parse_certificate(text).map(Document::Certificate),
        Some(EDGE_HEADER) => parse_edge_rep(text).map(Document::EdgeRep),
        Some(s) if s.starts_with("WITNESS") => parse_witness(text).map(Document::Witness),
        _ => Err(ParseError::syntax(lines.inner.peek().map_or(0, |(l, _)| *l), "unrecognised document header")),
    }
}

fn header_counts(lines: &mut Lines<'_>) -> Result<(usize, usize, Vec<usize>), ParseError> {
    let (line, toks) = lines.next("size line")?;
    match toks.as_slice() {
        ["n", n, "m", m, rest @ ..] => Ok((num(n, line)?, num(m, line)?, {
            let mut extra = Vec::new();
            for pair in rest.chunks(2) {
                match pair {
                    [_, v] => extra.push(num(v, line)?),
                    _ => return Err(ParseError::syntax(line, "malformed size line")),
                }
            }
            extra
        })),
        _ => Err(ParseError::syntax(line, "expected `n <n> m <m>`")),
    }
}

pub fn parse_certificate(text: &str) -> Result<RawCertificate, ParseError> {
    let mut lines = Lines::new(text);
    let (line, toks) = lines.next("header")?;
    if toks.join(" ") != CERT_HEADER {
        return Err(ParseError::syntax(line, format!("expected `{CERT_HEADER}`")));
    }
    let (n, m, _) = header_counts(&mut lines)?;
    let k = lines.section("S0")?;
    let mut s0 = Vec::with_capacity(k.min(1 << 20));
    for _ in 0..k {
        let (line, toks) = lines.next("S0 edge")?;
        match toks.as_slice() {
            [u, v] => s0.push((num(u, line)?, num(v, line)?)),
            _ => return Err(ParseError::syntax(line, "expected `u v`")),
        }
    }
    let z = lines.section("STEPS")?;
    let mut steps = Vec::with_capacity(z.min(1 << 20));
    for _ in 0..z {
        let (line, toks) = lines.next("step")?;
        steps.push(match toks.as_slice() {
            ["P", l, rest @ ..] => {
                let l: usize = num(l, line)?;
                if rest.len() != l + 1 {
                    return Err(ParseError::syntax(line, format!("path of length {l} needs {} nodes", l + 1)));
                }
                RawStep::Path(nums(rest, line)?)
            }
            ["X", w, rest @ ..] => {
                let center = num(w, line)?;
                let mut arms: [Vec<u64>; 3] = Default::default();
                let mut at = 0;
                for arm in arms.iter_mut() {
                    let l: usize = num(rest.get(at).ok_or_else(|| ParseError::syntax(line, "missing arm"))?, line)?;
                    let end = at + 1 + l + 1;
                    if end > rest.len() {
                        return Err(ParseError::syntax(line, "arm is shorter than its length"));
                    }
                    *arm = nums(&rest[at + 1..end], line)?;
                    at = end;
                }
                if at != rest.len() {
                    return Err(ParseError::syntax(line, "trailing tokens after expand"));
                }
                RawStep::Expand { center, arms }
            }
            _ => return Err(ParseError::syntax(line, "expected a `P` or `X` record")),
        });
    }
    lines.finish()?;
    Ok(RawCertificate { n, m, s0, steps })
}

fn node(g: &MultiGraph, label: u64) -> Result<NodeId, ParseError> {
    g.node_by_label(label).filter(|&v| g.is_node_alive(v)).ok_or(ParseError::UnknownLabel(label))
}

fn nodes(g: &MultiGraph, labels: &[u64]) -> Result<Vec<NodeId>, ParseError> {
    labels.iter().map(|&l| node(g, l)).collect()
}

impl RawCertificate {
    /// Maps labels to the ids of the simple graph `g`.
    pub fn resolve(&self, g: &MultiGraph) -> Result<PathRepresentation, ParseError> {
        let mut s0_edges = Vec::with_capacity(self.s0.len());
        for &(a, b) in &self.s0 {
            let (u, v) = (node(g, a)?, node(g, b)?);
            s0_edges.push(g.edge_between(u, v).ok_or(ParseError::MissingEdge(a, b))?);
        }
        s0_edges.sort_unstable();
        let mut steps = Vec::with_capacity(self.steps.len());
        for step in &self.steps {
            steps.push(match step {
                RawStep::Path(p) => Step::Path(BgPath::new(nodes(g, p)?)),
                RawStep::Expand { center, arms } => Step::Expand(ExpandRecord {
                    center: node(g, *center)?,
                    arms: [nodes(g, &arms[0])?, nodes(g, &arms[1])?, nodes(g, &arms[2])?],
                }),
            });
        }
        Ok(PathRepresentation { s0_edges, steps, basic: false })
    }

    /// The graph spanned by the certificate's edges, one edge per label
    /// pair, edge ids in ascending pair order.
    pub fn graph(&self) -> MultiGraph {
        let mut pairs: BTreeSet<(u64, u64)> = BTreeSet::new();
        let mut add = |seq: &[u64]| {
            for w in seq.windows(2) {
                pairs.insert((w[0].min(w[1]), w[0].max(w[1])));
            }
        };
        for &(u, v) in &self.s0 {
            add(&[u, v]);
        }
        for step in &self.steps {
            match step {
                RawStep::Path(p) => add(p),
                RawStep::Expand { arms, .. } => arms.iter().for_each(|a| add(a)),
            }
        }
        let pairs: Vec<(u64, u64)> = pairs.into_iter().collect();
        MultiGraph::from_labeled_edges(&pairs)
    }
}

fn labels(g: &MultiGraph, nodes: &[NodeId]) -> String {
    let mut out = String::new();
    for (i, &v) in nodes.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{}", g.label(v));
    }
    out
}

/// Writes `pr` for the simple graph `g`.
pub fn write_certificate(g: &MultiGraph, pr: &PathRepresentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{CERT_HEADER}");
    let _ = writeln!(out, "n {} m {}", g.node_count(), g.edge_count());
    let _ = writeln!(out, "S0 {}", pr.s0_edges.len());
    for &e in &pr.s0_edges {
        let (u, v) = g.endpoints(e);
        let (a, b) = (g.label(u), g.label(v));
        let _ = writeln!(out, "{} {}", a.min(b), a.max(b));
    }
    let _ = writeln!(out, "STEPS {}", pr.steps.len());
    for step in &pr.steps {
        match step {
            Step::Path(p) => {
                let _ = writeln!(out, "P {} {}", p.len(), labels(g, &p.nodes));
            }
            Step::Expand(x) => {
                let _ = write!(out, "X {}", g.label(x.center));
                for arm in &x.arms {
                    let _ = write!(out, " {} {}", arm.len() - 1, labels(g, arm));
                }
                out.push('\n');
            }
        }
    }
    out
}

pub fn parse_witness(text: &str) -> Result<RawWitness, ParseError> {
    let mut lines = Lines::new(text);
    let (line, toks) = lines.next("witness")?;
    let w = match toks.as_slice() {
        ["WITNESS", "TOOSMALL"] => RawWitness::TooSmall,
        ["WITNESS", "DISCONNECTED"] => RawWitness::Disconnected,
        ["WITNESS", "LOWDEGREE", v] => RawWitness::LowDegree(num(v, line)?),
        ["WITNESS", "CUTVERTEX", v] => RawWitness::CutVertex(num(v, line)?),
        ["WITNESS", "SEPPAIR", u, v] => RawWitness::SeparationPair(num(u, line)?, num(v, line)?),
        _ => return Err(ParseError::syntax(line, "unknown witness record")),
    };
    lines.finish()?;
    Ok(w)
}

impl RawWitness {
    pub fn resolve(&self, g: &MultiGraph) -> Result<Witness, ParseError> {
        Ok(match *self {
            RawWitness::TooSmall => Witness::TooFewNodes,
            RawWitness::Disconnected => Witness::Disconnected,
            RawWitness::LowDegree(v) => Witness::LowDegree(node(g, v)?),
            RawWitness::CutVertex(v) => Witness::CutVertex(node(g, v)?),
            RawWitness::SeparationPair(u, v) => Witness::SeparationPair(node(g, u)?, node(g, v)?),
        })
    }
}

pub fn write_witness(g: &MultiGraph, w: &Witness) -> String {
    match *w {
        Witness::TooFewNodes => "WITNESS TOOSMALL\n".to_string(),
        Witness::Disconnected => "WITNESS DISCONNECTED\n".to_string(),
        Witness::LowDegree(v) => format!("WITNESS LOWDEGREE {}\n", g.label(v)),
        Witness::CutVertex(v) => format!("WITNESS CUTVERTEX {}\n", g.label(v)),
        Witness::SeparationPair(u, v) => format!("WITNESS SEPPAIR {} {}\n", g.label(u), g.label(v)),
    }
}

/// Writes an edge representation. Edge ids are the graph's ids; the size
/// line also records the id bound so readers can reject wild ids.
pub fn write_edge_rep(er: &EdgeRepresentation) -> String {
    let l = |v: NodeId| er.labels[v];
    let mut bound = 0;
    let mut edges = er.g0.len();
    let mut see = |e: EdgeId| bound = bound.max(e + 1);
    for &(e, _, _) in &er.g0 {
        see(e);
    }
    let mut body = String::new();
    for op in &er.ops {
        let _ = match *op {
            Op::A { u, v, new } => {
                see(new);
                edges += 1;
                writeln!(body, "A {} {} {new}", l(u), l(v))
            }
            Op::B { split, keep, x, part, y, new } => {
                see(part);
                see(new);
                edges += 2;
                writeln!(body, "B {split} {} {} {part} {} {new}", l(keep), l(x), l(y))
            }
            Op::C { split1, keep1, x, part1, split2, keep2, y, part2, new } => {
                see(part1);
                see(part2);
                see(new);
                edges += 3;
                writeln!(body, "C {split1} {} {} {part1} {split2} {} {} {part2} {new}", l(keep1), l(x), l(keep2), l(y))
            }
            Op::D { w, anchors: [a1, a2, a3], new: [e1, e2, e3] } => {
                see(e1);
                see(e2);
                see(e3);
                edges += 3;
                writeln!(body, "D {} {} {} {} {e1} {e2} {e3}", l(w), l(a1), l(a2), l(a3))
            }
        };
    }
    let mut out = String::new();
    let _ = writeln!(out, "{EDGE_HEADER}");
    let _ = writeln!(out, "n {} m {edges} ids {bound}", er.labels.len());
    let _ = writeln!(out, "G0 {}", er.g0.len());
    for &(e, u, v) in &er.g0 {
        let _ = writeln!(out, "{e} {} {}", l(u), l(v));
    }
    let _ = writeln!(out, "OPS {}", er.ops.len());
    out.push_str(&body);
    out
}

pub fn parse_edge_rep(text: &str) -> Result<EdgeRepresentation, ParseError> {
    let mut lines = Lines::new(text);
    let (line, toks) = lines.next("header")?;
    if toks.join(" ") != EDGE_HEADER {
        return Err(ParseError::syntax(line, format!("expected `{EDGE_HEADER}`")));
    }
    let (n, _, extra) = header_counts(&mut lines)?;
    let bound = *extra.first().ok_or_else(|| ParseError::syntax(2, "missing `ids <bound>`"))?;
    let id = |tok: &str, line: usize| -> Result<EdgeId, ParseError> {
        let e: EdgeId = num(tok, line)?;
        if e >= bound {
            return Err(ParseError::syntax(line, format!("edge id {e} is not below {bound}")));
        }
        Ok(e)
    };
    enum RawOp {
        A(u64, u64, EdgeId),
        B(EdgeId, u64, u64, EdgeId, u64, EdgeId),
        C(EdgeId, u64, u64, EdgeId, EdgeId, u64, u64, EdgeId, EdgeId),
        D(u64, [u64; 3], [EdgeId; 3]),
    }
    let k = lines.section("G0")?;
    let mut g0 = Vec::with_capacity(k.min(1 << 20));
    for _ in 0..k {
        let (line, toks) = lines.next("G0 edge")?;
        match toks.as_slice() {
            [e, u, v] => g0.push((id(e, line)?, num::<u64>(u, line)?, num::<u64>(v, line)?)),
            _ => return Err(ParseError::syntax(line, "expected `id u v`")),
        }
    }
    let z = lines.section("OPS")?;
    let mut raw = Vec::with_capacity(z.min(1 << 20));
    for _ in 0..z {
        let (line, t) = lines.next("op")?;
        let lab = |i: usize| num::<u64>(t[i], line);
        let eid = |i: usize| id(t[i], line);
        raw.push(match (t[0], t.len()) {
            ("A", 4) => RawOp::A(lab(1)?, lab(2)?, eid(3)?),
            ("B", 7) => RawOp::B(eid(1)?, lab(2)?, lab(3)?, eid(4)?, lab(5)?, eid(6)?),
            ("C", 10) => RawOp::C(eid(1)?, lab(2)?, lab(3)?, eid(4)?, eid(5)?, lab(6)?, lab(7)?, eid(8)?, eid(9)?),
            ("D", 8) => RawOp::D(lab(1)?, [lab(2)?, lab(3)?, lab(4)?], [eid(5)?, eid(6)?, eid(7)?]),
            _ => return Err(ParseError::syntax(line, "malformed op record")),
        });
    }
    lines.finish()?;

    let mut seen: BTreeSet<u64> = BTreeSet::new();
    for &(_, u, v) in &g0 {
        seen.extend([u, v]);
    }
    for op in &raw {
        match *op {
            RawOp::A(u, v, _) => seen.extend([u, v]),
            RawOp::B(_, a, x, _, y, _) => seen.extend([a, x, y]),
            RawOp::C(_, a, x, _, _, b, y, _, _) => seen.extend([a, x, b, y]),
            RawOp::D(w, a, _) => seen.extend([w, a[0], a[1], a[2]]),
        }
    }
    if seen.len() != n {
        return Err(ParseError::syntax(2, format!("header announces {n} nodes, found {}", seen.len())));
    }
    let labels: Vec<u64> = seen.into_iter().collect();
    let id_of = |l: u64| labels.binary_search(&l).expect("collected label");
    let g0 = g0.into_iter().map(|(e, u, v)| (e, id_of(u), id_of(v))).collect();
    let ops = raw
        .into_iter()
        .map(|op| match op {
            RawOp::A(u, v, new) => Op::A { u: id_of(u), v: id_of(v), new },
            RawOp::B(split, keep, x, part, y, new) => {
                Op::B { split, keep: id_of(keep), x: id_of(x), part, y: id_of(y), new }
            }
            RawOp::C(split1, keep1, x, part1, split2, keep2, y, part2, new) => Op::C {
                split1,
                keep1: id_of(keep1),
                x: id_of(x),
                part1,
                split2,
                keep2: id_of(keep2),
                y: id_of(y),
                part2,
                new,
            },
            RawOp::D(w, a, new) => Op::D { w: id_of(w), anchors: a.map(id_of), new },
        })
        .collect();
    Ok(EdgeRepresentation { labels, g0, ops })
}

pub fn write_contractions(seq: &[(u64, u64)]) -> String {
    let mut out = String::new();
    for (u, v) in seq {
        let _ = writeln!(out, "c {u} {v}");
    }
    out
}

pub fn parse_contractions(text: &str) -> Result<Vec<(u64, u64)>, ParseError> {
    let mut out = Vec::new();
    for (line, toks) in Lines::new(text).inner {
        match toks.as_slice() {
            ["c", u, v] => out.push((num(u, line)?, num(v, line)?)),
            _ => return Err(ParseError::syntax(line, "expected `c u v`")),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::path_to_edge;

    fn counterexample() -> (MultiGraph, PathRepresentation) {
        let g = MultiGraph::from_labeled_edges(&[
            (10, 20), (10, 30), (10, 40), (20, 30), (20, 40), (30, 40), (50, 10), (50, 20), (50, 30),
        ]);
        let pr = PathRepresentation {
            s0_edges: (0..6).collect(),
            steps: vec![
                Step::Path(BgPath::new(vec![0, 4, 1])),
                Step::Expand(ExpandRecord { center: 4, arms: [vec![4, 0], vec![4, 1], vec![4, 2]] }),
            ],
            basic: false,
        };
        (g, pr)
    }

    #[test]
    fn certificate_text() {
        let (g, pr) = counterexample();
        let text = write_certificate(&g, &pr);
        assert!(text.starts_with("tricert v1\nn 5 m 9\nS0 6\n10 20\n"));
        assert!(text.contains("STEPS 2\nP 2 10 50 20\nX 50 1 50 10 1 50 20 1 50 30\n"));
        let raw = parse_certificate(&text).unwrap();
        assert_eq!((raw.n, raw.m), (5, 9));
        assert_eq!(raw.resolve(&g).unwrap(), pr);
        assert_eq!(raw.graph().labeled_edges(), g.labeled_edges());
    }

    #[test]
    fn certificate_errors() {
        assert!(matches!(parse_certificate("tricert v2\n"), Err(ParseError::Syntax { line: 1, .. })));
        let bad = "tricert v1\nn 4 m 6\nS0 0\nSTEPS 1\nP 2 1 2\n";
        assert!(matches!(parse_certificate(bad), Err(ParseError::Syntax { line: 5, .. })));
        let (g, _) = counterexample();
        let unknown = parse_certificate("tricert v1\nn 4 m 6\nS0 1\n10 99\nSTEPS 0\n").unwrap();
        assert_eq!(unknown.resolve(&g), Err(ParseError::UnknownLabel(99)));
        let missing = parse_certificate("tricert v1\nn 4 m 6\nS0 1\n40 50\nSTEPS 0\n").unwrap();
        assert_eq!(missing.resolve(&g), Err(ParseError::MissingEdge(40, 50)));
    }

    #[test]
    fn witness_text() {
        let (g, _) = counterexample();
        for w in [
            Witness::TooFewNodes,
            Witness::Disconnected,
            Witness::LowDegree(2),
            Witness::CutVertex(3),
            Witness::SeparationPair(0, 4),
        ] {
            let text = write_witness(&g, &w);
            assert_eq!(parse_witness(&text).unwrap().resolve(&g).unwrap(), w);
        }
        assert_eq!(write_witness(&g, &Witness::SeparationPair(0, 4)), "WITNESS SEPPAIR 10 50\n");
        assert!(matches!(parse_document("WITNESS CUTVERTEX 3\n"), Ok(Document::Witness(RawWitness::CutVertex(3)))));
    }

    #[test]
    fn edge_rep_text() {
        let (g, mut pr) = counterexample();
        pr.steps[1] = Step::Path(BgPath::new(vec![4, 2]));
        let er = path_to_edge(&g, &pr).unwrap();
        let text = write_edge_rep(&er);
        assert!(text.contains("OPS 2\nA 10 20 6\nB 6 10 50 7 30 8\n"), "{text}");
        assert_eq!(parse_edge_rep(&text).unwrap(), er);
        assert!(matches!(parse_document(&text), Ok(Document::EdgeRep(_))));
        let wild = text.replace("A 10 20 6", "A 10 20 600");
        assert!(parse_edge_rep(&wild).is_err());
    }

    #[test]
    fn contraction_text() {
        let seq = vec![(5, 2), (6, 4)];
        let text = write_contractions(&seq);
        assert_eq!(text, "c 5 2\nc 6 4\n");
        assert_eq!(parse_contractions(&text).unwrap(), seq);
    }
}
