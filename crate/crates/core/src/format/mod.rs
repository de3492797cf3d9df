//! Text formats for graphs, certificates, witnesses, edge representations and
//! contraction sequences.

pub mod certificate;
pub mod graph;

pub use self::certificate::{
    parse_certificate, parse_contractions, parse_document, parse_edge_rep, parse_witness, write_certificate,
    write_contractions, write_edge_rep, write_witness, Document, RawCertificate, RawStep, RawWitness,
};
pub use self::graph::{parse_graph, parse_graph_auto, write_edge_list, GraphFormat};
