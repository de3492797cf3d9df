use thiserror::Error;

use crate::graph::{EdgeId, NodeId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("node {0} is not alive")]
    DeadNode(NodeId),
    #[error("edge {0} is not alive")]
    DeadEdge(EdgeId),
    #[error("edge id {0} is already in use")]
    EdgeInUse(EdgeId),
    #[error("edge {0} is a self-loop and cannot be contracted")]
    ContractSelfLoop(EdgeId),
    #[error("duplicate node label {0}")]
    DuplicateLabel(u64),
}

/// Errors from the text formats.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("graph too large: {0}")]
    Size(String),
    #[error("unknown node label {0}")]
    UnknownLabel(u64),
    #[error("no edge between labels {0} and {1}")]
    MissingEdge(u64, u64),
}

impl ParseError {
    pub(crate) fn syntax(line: usize, msg: impl Into<String>) -> Self {
        ParseError::Syntax { line, msg: msg.into() }
    }
}

/// Rejections raised while growing or validating a subdivision.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("node {0} has degree {1} in the subdivision")]
    BadDegree(NodeId, usize),
    #[error("subdivision contains a cycle without branch nodes")]
    PureCycle,
    #[error("subdivision is disconnected")]
    Disconnected,
    #[error("subdivision has {0} branch nodes, need at least 4")]
    TooFewBranchNodes(usize),
    #[error("two links join the same pair of branch nodes {0} and {1}")]
    ParallelLinks(NodeId, NodeId),
    #[error("a link starts and ends at node {0}")]
    LoopLink(NodeId),
    #[error("edge {0} is not a live edge of the host")]
    NotHostEdge(EdgeId),
    #[error("path is not a BG-path: {0}")]
    InvalidPath(crate::subdivision::Violation),
    #[error("expand rejected: {0}")]
    InvalidExpand(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("certificate is not valid: {0}")]
    Invalid(String),
    #[error("replay failed at op {op}: {msg}")]
    Replay { op: usize, msg: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("prescribed S0 rejected: {0}")]
    BadPrescribed(#[from] StructureError),
    #[error("internal transform failure: {0}")]
    Transform(#[from] TransformError),
    #[error("search failed to converge: {0}")]
    Internal(String),
}
