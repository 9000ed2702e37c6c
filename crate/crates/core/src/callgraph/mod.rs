//! Method-level call graph: analyzer output parsing, refinement, adjacency
//! encoding and DOT rendering.

mod dot;
mod graph;
mod method;
mod parse;
mod refine;

pub use dot::export_dot;
pub use graph::{AdjacencyMatrix, CallGraph};
pub(crate) use method::split_type_list as split_params;
pub use method::{simple_type_name, MethodRef};
pub use parse::{parse_callgraph_text, CallEdge, CallKind, ParseOutput, ParseWarning, RawRecord};
pub use refine::{is_app_class, is_jdk_class, refine_graph, refine_records};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CallGraphError {
    #[error("no methods survived refinement (check the application package prefixes)")]
    EmptyGraph,
    #[error("at least one application package prefix is required")]
    NoAppPrefixes,
    #[error("invalid method reference: {0}")]
    InvalidMethod(String),
    #[error("edge ({0}, {1}) references a node outside the graph")]
    EdgeOutOfRange(usize, usize),
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("duplicate node {0}")]
    DuplicateNode(String),
    #[error("clustering covers {got} methods but the graph has {expected}")]
    ClusteringMismatch { expected: usize, got: usize },
}
