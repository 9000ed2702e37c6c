//! Batch pipeline around `mono2rest-core`: every stage reads and writes
//! plain files so stages can be rerun, inspected or replaced individually.
//!
//! Stage artifacts, all written to the output directory:
//!
//! | stage    | artifacts                                        |
//! |----------|--------------------------------------------------|
//! | extract  | `graph.json`, `callgraph.dot`, `terms.json`      |
//! | cluster  | `clustering.json`, `stats.csv`                   |
//! | restify  | `openapi-c<id>.json` per cluster, `api-tree.json` |
//! | evaluate | `evaluation.json`, `evaluation.txt`              |

mod artifacts;
mod commands;
mod config;
mod error;

pub use artifacts::{
    ClusterEntry, ClusteringArtifact, GraphArtifact, Metadata, TermsEntry, TOOL_NAME, TOOL_VERSION,
};
pub use commands::{
    cmd_cluster, cmd_evaluate, cmd_extract, cmd_pipeline, cmd_restify, CLUSTERING_FILE, GRAPH_FILE,
};
pub use config::PipelineConfig;
pub use error::CliError;
