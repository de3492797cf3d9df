//! Edge-list and DIMACS readers, edge-list writer.

use std::collections::BTreeSet;

use crate::error::ParseError;
use crate::graph::MultiGraph;

/// Largest node count a DIMACS header may declare.
pub const MAX_NODES: u64 = 1 << 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    /// `u v` per line, `#` comments.
    EdgeList,
    /// `p edge n m` header followed by `e u v` lines.
    Dimacs,
}

impl GraphFormat {
    /// DIMACS when the first meaningful line is a `p` header.
    pub fn detect(text: &str) -> GraphFormat {
        for line in text.lines() {
            let line = strip_comment(line);
            let mut toks = line.split_whitespace();
            match toks.next() {
                None | Some("c") => continue,
                Some("p") => return GraphFormat::Dimacs,
                Some(_) => return GraphFormat::EdgeList,
            }
        }
        GraphFormat::EdgeList
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn label(tok: &str, line: usize) -> Result<u64, ParseError> {
    tok.parse::<u64>()
        .map_err(|_| ParseError::syntax(line, format!("expected a non-negative integer, found {tok:?}")))
}

pub fn parse_graph(bytes: &[u8], format: GraphFormat) -> Result<MultiGraph, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|e| ParseError::syntax(0, format!("invalid UTF-8: {e}")))?;
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Dimacs => parse_dimacs(text),
    }
}

/// Parses with format detection.
pub fn parse_graph_auto(bytes: &[u8]) -> Result<MultiGraph, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|e| ParseError::syntax(0, format!("invalid UTF-8: {e}")))?;
    parse_graph(bytes, GraphFormat::detect(text))
}

fn parse_edge_list(text: &str) -> Result<MultiGraph, ParseError> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let toks: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            [u, v] => pairs.push((label(u, line_no)?, label(v, line_no)?)),
            _ => return Err(ParseError::syntax(line_no, "expected two node labels")),
        }
    }
    let distinct: BTreeSet<u64> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
    if distinct.len() as u64 > MAX_NODES {
        return Err(ParseError::Size(format!("{} nodes", distinct.len())));
    }
    Ok(MultiGraph::from_labeled_edges(&pairs))
}

fn parse_dimacs(text: &str) -> Result<MultiGraph, ParseError> {
    let mut graph: Option<(MultiGraph, u64)> = None;
    let mut seen_edges = 0u64;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let toks: Vec<&str> = strip_comment(raw).split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            ["c", ..] => {}
            ["p", kind, n, m] => {
                if graph.is_some() {
                    return Err(ParseError::syntax(line_no, "second problem line"));
                }
                if *kind != "edge" && *kind != "col" {
                    return Err(ParseError::syntax(line_no, format!("unsupported problem type {kind:?}")));
                }
                let n = label(n, line_no)?;
                let m = label(m, line_no)?;
                if n > MAX_NODES {
                    return Err(ParseError::Size(format!("{n} nodes")));
                }
                let labels: Vec<u64> = (1..=n).collect();
                graph = Some((MultiGraph::with_labels(&labels).expect("distinct"), m));
            }
            ["e", u, v] => {
                let (g, _) = graph
                    .as_mut()
                    .ok_or_else(|| ParseError::syntax(line_no, "edge before problem line"))?;
                let (u, v) = (label(u, line_no)?, label(v, line_no)?);
                let lookup = |x: u64| {
                    g.node_by_label(x)
                        .ok_or_else(|| ParseError::syntax(line_no, format!("node {x} out of range")))
                };
                let (a, b) = (lookup(u)?, lookup(v)?);
                g.add_edge(a, b);
                seen_edges += 1;
            }
            _ => return Err(ParseError::syntax(line_no, "expected `p edge n m` or `e u v`")),
        }
    }
    let (g, m) = graph.ok_or_else(|| ParseError::syntax(0, "missing problem line"))?;
    if m != seen_edges {
        return Err(ParseError::syntax(0, format!("header announces {m} edges, found {seen_edges}")));
    }
    Ok(g)
}

/// Sorted `u v` lines with original labels, smaller label first.
pub fn write_edge_list(g: &MultiGraph) -> String {
    let mut out = String::new();
    for (u, v) in g.labeled_edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
