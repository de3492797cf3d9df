//! Checks and conversions on parsed documents, shared by the command line
//! and the C interface.

use std::str::FromStr;

use crate::format::{write_certificate, write_contractions, write_edge_rep, Document, RawCertificate};
use crate::graph::MultiGraph;
use crate::sequencer::PathRepresentation;
use crate::transforms::{edge_to_path, from_basic, path_to_edge, replay_edge_rep, to_basic, to_contractions};
use crate::verifier::{verify_certificate, verify_witness};

/// Resolves a path certificate against the simplified graph. Any mismatch,
/// including the size line, is a rejection.
fn resolve(g: &MultiGraph, raw: &RawCertificate) -> Result<PathRepresentation, String> {
    if (raw.n, raw.m) != (g.node_count(), g.edge_count()) {
        return Err(format!(
            "header announces n {} m {}, graph has n {} m {}",
            raw.n,
            raw.m,
            g.node_count(),
            g.edge_count()
        ));
    }
    raw.resolve(g).map_err(|e| e.to_string())
}

/// Accepts or rejects a certificate or witness for `g_raw`. The error is a
/// one-line reason.
pub fn verify_document(g_raw: &MultiGraph, doc: &Document, basic: bool) -> Result<(), String> {
    let (g, _) = g_raw.simplify();
    match doc {
        Document::Certificate(raw) => {
            let pr = resolve(&g, raw)?;
            verify_certificate(&g, &pr, basic).map_err(|r| r.to_string())
        }
        Document::Witness(raw) => {
            let w = raw.resolve(&g).map_err(|e| e.to_string())?;
            verify_witness(&g, &w).map_err(|r| r.to_string())
        }
        Document::EdgeRep(er) => {
            let h = replay_edge_rep(er).map_err(|e| e.to_string())?;
            if h.labeled_edges() != g.labeled_edges() {
                return Err("edge representation builds a different graph".into());
            }
            let pr = edge_to_path(er).map_err(|e| e.to_string())?;
            verify_certificate(&h, &pr, basic).map_err(|r| r.to_string())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Basic,
    Nonbasic,
    Edge,
    Path,
    Contractions,
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "basic" => Target::Basic,
            "nonbasic" => Target::Nonbasic,
            "edge" => Target::Edge,
            "path" => Target::Path,
            "contractions" => Target::Contractions,
            _ => return Err(format!("unknown target {s:?}")),
        })
    }
}

/// The graph and path representation a certificate describes. A path
/// certificate refers to `graph` when given, else to the graph its own
/// edges span.
pub fn load_certificate(doc: &Document, graph: Option<&MultiGraph>) -> Result<(MultiGraph, PathRepresentation), String> {
    match doc {
        Document::Certificate(raw) => {
            let g = match graph {
                Some(g) => g.simplify().0,
                None => raw.graph(),
            };
            let pr = raw.resolve(&g).map_err(|e| e.to_string())?;
            Ok((g, pr))
        }
        Document::EdgeRep(er) => {
            let g = replay_edge_rep(er).map_err(|e| e.to_string())?;
            Ok((g, edge_to_path(er).map_err(|e| e.to_string())?))
        }
        Document::Witness(_) => Err("a witness has no other forms".into()),
    }
}

/// Converts a certificate to the text of another form.
pub fn convert_document(doc: &Document, graph: Option<&MultiGraph>, to: Target) -> Result<String, String> {
    let (g, pr) = load_certificate(doc, graph)?;
    let s = |e: crate::error::TransformError| e.to_string();
    Ok(match to {
        Target::Path => write_certificate(&g, &pr),
        Target::Basic => write_certificate(&g, &to_basic(&g, &pr).map_err(s)?),
        Target::Nonbasic => write_certificate(&g, &from_basic(&pr)),
        Target::Edge => write_edge_rep(&path_to_edge(&g, &pr).map_err(s)?),
        Target::Contractions => write_contractions(&to_contractions(&path_to_edge(&g, &pr).map_err(s)?).map_err(s)?),
    })
}
