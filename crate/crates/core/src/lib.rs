//! Microservice candidate identification and REST API synthesis for
//! monolithic applications.
//!
//! The crate is organized as a batch pipeline:
//!
//! - [`callgraph`] turns static-analyzer output into a refined method-level
//!   call graph.
//! - [`semantics`] tokenizes identifiers, embeds methods and builds the
//!   cosine similarity matrix.
//! - [`clustering`] partitions methods into `k` clusters with NSGA-III over
//!   coupling, cohesion and semantic similarity.
//! - [`restify`] picks the methods each cluster must expose, assigns HTTP
//!   verbs, builds URI trees and emits OpenAPI documents.
//! - [`evaluation`] matches clusters against a reference decomposition.
//!
//! The numeric parts are generic over [`Scalar`] (`f32` or `f64`). The
//! aliases at the crate root fix the scalar to `f64`, which is what the
//! file formats use.

pub mod callgraph;
pub mod clustering;
pub mod evaluation;
pub mod restify;
mod scalar;
pub mod semantics;

pub use scalar::Scalar;

pub use callgraph::{CallEdge, CallGraph, CallKind, MethodRef};
pub use clustering::{ClusteringSolution, OptimizerConfig};
pub use restify::HttpVerb;

/// Embedding vector with `f64` components.
pub type EmbeddingVector = semantics::EmbeddingVector<f64>;
/// Cosine similarity matrix with `f64` cells.
pub type SimilarityMatrix = semantics::SimilarityMatrix<f64>;
/// Objective values with `f64` components.
pub type ObjectiveVector = clustering::ObjectiveVector<f64>;
/// Per-generation optimizer statistics with `f64` values.
pub type GenerationStats = clustering::GenerationStats<f64>;
/// Optimizer result with `f64` objectives.
pub type OptimizerRun = clustering::OptimizerRun<f64>;
/// Cluster-to-reference matching with `f64` scores.
pub type MatchResult = evaluation::MatchResult<f64>;
