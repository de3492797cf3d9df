//! Certifying 3-connectivity.
//!
//! A simple graph is 3-connected exactly when it can be grown from a
//! subdivision of `K4` by BG-paths. [`sequencer::certify`] searches for such a
//! construction sequence and returns it as a certificate, or returns a
//! separating witness. [`verifier`] checks both kinds of output without
//! sharing the search code, and [`transforms`] converts certificates between
//! the path form, the indexed edge form, basic sequences with expand
//! operations, and contraction sequences.

pub mod document;
pub mod dot;
pub mod error;
pub mod format;
pub mod graph;
pub mod k4;
pub mod oracle;
pub mod sequencer;
pub mod sparsify;
pub mod subdivision;
pub mod transforms;
pub mod verifier;
pub mod witness;

pub use error::{CertifyError, GraphError, ParseError, StructureError, TransformError};
pub use graph::{EdgeId, MultiGraph, NodeId, SimplifyReport};
pub use sequencer::{certify, CertifyOptions, CertifyResult, PathRepresentation, Step, Verdict};
pub use subdivision::{BgPath, ExpandRecord, Subdivision, Violation};
pub use witness::Witness;
