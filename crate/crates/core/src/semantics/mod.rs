//! Identifier terms, method embeddings and the pairwise similarity matrix.

mod embed;
mod similarity;
mod terms;
mod tokenize;

pub use embed::{
    EmbeddingProvider, EmbeddingVector, EmbeddingsFile, FileEmbeddings, TrigramEmbedder,
    FALLBACK_DIM, FALLBACK_SEED,
};
pub use similarity::{cosine, SimilarityMatrix};
pub use terms::{method_terms, signature_terms, EmbeddingMode, TermList};
pub use tokenize::tokenize_identifier;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SemanticsError {
    #[error("full-context terms need a signature for {0}")]
    MissingSignature(String),
    #[error("no embedding for {0}")]
    UnknownMethod(String),
    #[error("no embedding for text {0:?}")]
    UnknownText(String),
    #[error("cannot embed empty term text")]
    ZeroVector,
    #[error("embedding dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("embedding has non-finite components")]
    NonFinite,
    #[error("no vectors to compare")]
    NoVectors,
    #[error("unknown embedding mode {0:?} (expected name_only or full_context)")]
    UnknownMode(String),
}
