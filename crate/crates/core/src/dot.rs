//! DOT text for a stage of a certificate: the subdivision after the first
//! `stage` steps, drawn inside the whole graph.

use std::fmt::Write as _;

use crate::error::StructureError;
use crate::graph::MultiGraph;
use crate::sequencer::{PathRepresentation, Step};
use crate::subdivision::Subdivision;

/// Real nodes are filled, other nodes of S are plain circles, nodes and
/// edges outside S are dashed grey. `stage` is clamped to the step count.
pub fn stage_dot(g: &MultiGraph, pr: &PathRepresentation, stage: usize) -> Result<String, StructureError> {
    let mut s = Subdivision::new(g, &pr.s0_edges)?;
    for step in pr.steps.iter().take(stage) {
        match step {
            Step::Path(p) => s.apply_bg_path(p)?,
            Step::Expand(x) => s.apply_expand(x)?,
        };
    }
    let mut out = String::new();
    let _ = writeln!(out, "graph stage{} {{", stage.min(pr.steps.len()));
    let _ = writeln!(out, "  node [shape=circle];");
    for v in g.nodes() {
        let style = if s.is_real(v) {
            "style=filled, fillcolor=black, fontcolor=white"
        } else if s.contains_node(v) {
            "style=solid"
        } else {
            "style=dashed, color=grey"
        };
        let _ = writeln!(out, "  {} [{style}];", g.label(v));
    }
    for e in g.edges() {
        let (u, v) = g.endpoints(e);
        let (a, b) = (g.label(u).min(g.label(v)), g.label(u).max(g.label(v)));
        let style = if s.contains_edge(e) { "" } else { " [style=dashed, color=grey]" };
        let _ = writeln!(out, "  {a} -- {b}{style};");
    }
    out.push_str("}\n");
    Ok(out)
}
