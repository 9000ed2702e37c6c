use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::tokenize::tokenize_identifier;
use super::SemanticsError;
use crate::callgraph::{simple_type_name, MethodRef};
use crate::restify::MethodSignature;

/// Which identifiers contribute terms to a method's embedding text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingMode {
    /// Tokens of the method name.
    #[default]
    NameOnly,
    /// Method name plus declaring class, parameter and return type names.
    FullContext,
}

impl EmbeddingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::NameOnly => "name_only",
            Self::FullContext => "full_context",
        }
    }
}

impl fmt::Display for EmbeddingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EmbeddingMode {
    type Err = SemanticsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "name_only" => Ok(Self::NameOnly),
            "full_context" => Ok(Self::FullContext),
            other => Err(SemanticsError::UnknownMode(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermList {
    pub method: MethodRef,
    pub terms: Vec<String>,
}

impl TermList {
    pub fn text(&self) -> String {
        self.terms.join(" ")
    }
}

pub fn method_terms(
    method: &MethodRef,
    signature: Option<&MethodSignature>,
    mode: EmbeddingMode,
) -> Result<TermList, SemanticsError> {
    let mut terms = tokenize_identifier(&method.method_name);
    if mode == EmbeddingMode::FullContext {
        let sig = signature.ok_or_else(|| SemanticsError::MissingSignature(method.key()))?;
        let mut extra = tokenize_identifier(method.simple_class_name());
        for ty in sig
            .param_types
            .iter()
            .chain(std::iter::once(&sig.return_type))
        {
            let simple = simple_type_name(ty);
            if simple != "void" {
                extra.extend(tokenize_identifier(simple));
            }
        }
        for tok in extra {
            if !terms.contains(&tok) {
                terms.push(tok);
            }
        }
    }
    Ok(TermList {
        method: method.clone(),
        terms,
    })
}

/// `return_type method(param_types)` for a signature, or a best-effort
/// rendering from the method reference alone.
pub fn signature_terms(method: &MethodRef, signature: Option<&MethodSignature>) -> String {
    match signature {
        Some(sig) => sig.text(),
        None => method.signature_text(),
    }
}
