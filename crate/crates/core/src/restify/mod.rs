//! RESTification: which methods each cluster exposes, their HTTP verbs, URI
//! trees and OpenAPI documents.

mod classify;
mod exposure;
mod grouping;
mod javap;
mod openapi;
mod pos;
mod segment;
mod tree;

pub use classify::{
    classify_http, is_lexicon_verb, Classification, ClassificationEntry, ClassificationSource,
    Classifier, FileClassifier, LexiconClassifier,
};
pub use exposure::{select_exposed_methods, ExposedMethod, ExposureReason};
pub use grouping::{group_class_segments, ClassGroup, DEFAULT_GROUP_THRESHOLD};
pub use javap::{parse_javap, JavapOutput, MethodSignature, Visibility};
pub use openapi::{export_openapi, is_url_primitive, schema_for_type, OpenApiDocument};
pub use pos::{PosTag, PosTagger};
pub use segment::{is_kebab_segment, kebab_case, method_segment};
pub use tree::{build_api_tree, init_api_tree, ApiNode, ApiOperation, ApiTree, ExposedOperation};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semantics::SemanticsError;

/// The four verbs a method can be mapped to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum HttpVerb {
    Get,
    Put,
    Post,
    Delete,
}

impl HttpVerb {
    pub const ALL: [HttpVerb; 4] = [Self::Get, Self::Put, Self::Post, Self::Delete];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Get => "GET",
            Self::Put => "PUT",
            Self::Post => "POST",
            Self::Delete => "DELETE",
        }
    }

    /// Lowercase form used as an OpenAPI operation key.
    pub fn openapi_key(self) -> &'static str {
        match self {
            Self::Get => "get",
            Self::Put => "put",
            Self::Post => "post",
            Self::Delete => "delete",
        }
    }
}

impl fmt::Display for HttpVerb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for HttpVerb {
    type Err = RestifyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|v| v.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| RestifyError::UnknownVerb(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RestifyError {
    #[error("duplicate operation {verb} {path}")]
    DuplicatePathVerb { path: String, verb: HttpVerb },
    #[error("unknown HTTP verb {0:?}")]
    UnknownVerb(String),
    #[error("confidence {confidence} for {key} is outside [0, 1]")]
    InvalidConfidence { key: String, confidence: f64 },
    #[error("unknown part-of-speech tag {0:?}")]
    UnknownTag(String),
    #[error("class name grouping failed: {0}")]
    Semantics(#[from] SemanticsError),
    #[error("clustering covers {got} methods but the graph has {expected}")]
    ClusteringMismatch { expected: usize, got: usize },
}
