use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::javap::MethodSignature;
use super::{HttpVerb, RestifyError};
use crate::semantics::tokenize_identifier;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassificationSource {
    Lexicon,
    ExternalFile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub method_key: String,
    pub verb: HttpVerb,
    pub confidence: f64,
    pub source: ClassificationSource,
    /// Set when an external classifier had no entry and the lexicon answered.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub fallback: bool,
}

pub trait Classifier {
    fn classify(&self, signature: &MethodSignature) -> Classification;
}

pub fn classify_http(signature: &MethodSignature, classifier: &dyn Classifier) -> Classification {
    classifier.classify(signature)
}

const GET_WORDS: [&str; 9] = [
    "get", "find", "fetch", "read", "list", "retrieve", "is", "has", "show",
];
const PUT_WORDS: [&str; 5] = ["set", "update", "replace", "modify", "change"];
const DELETE_WORDS: [&str; 4] = ["delete", "remove", "clear", "cancel"];
/// Common POST prefixes. They take the default branch like any other
/// unlisted word, but still count as verbs for segment naming.
const POST_WORDS: [&str; 8] = [
    "create", "add", "save", "insert", "process", "send", "post", "new",
];

/// True for words the lexicon lists under one of the four verbs.
pub fn is_lexicon_verb(word: &str) -> bool {
    [&GET_WORDS[..], &PUT_WORDS, &DELETE_WORDS, &POST_WORDS]
        .iter()
        .any(|family| family.contains(&word))
}

/// Maps the first token of the method name to a verb family; anything
/// unrecognized is a POST with confidence 0.5.
#[derive(Clone, Copy, Debug, Default)]
pub struct LexiconClassifier;

impl LexiconClassifier {
    pub fn verb_for(method_name: &str) -> (HttpVerb, f64) {
        let first = tokenize_identifier(method_name)
            .into_iter()
            .next()
            .unwrap_or_default();
        let first = first.as_str();
        if GET_WORDS.contains(&first) {
            (HttpVerb::Get, 1.0)
        } else if PUT_WORDS.contains(&first) {
            (HttpVerb::Put, 1.0)
        } else if DELETE_WORDS.contains(&first) {
            (HttpVerb::Delete, 1.0)
        } else {
            (HttpVerb::Post, 0.5)
        }
    }
}

impl Classifier for LexiconClassifier {
    fn classify(&self, signature: &MethodSignature) -> Classification {
        let (verb, confidence) = Self::verb_for(&signature.method.method_name);
        Classification {
            method_key: signature.key(),
            verb,
            confidence,
            source: ClassificationSource::Lexicon,
            fallback: false,
        }
    }
}

/// One entry of a classification file:
/// `{"<method key>": {"verb": "GET", "confidence": 0.96}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationEntry {
    pub verb: HttpVerb,
    pub confidence: f64,
}

/// Stored classifications, with the lexicon answering for missing keys.
#[derive(Clone, Debug, Default)]
pub struct FileClassifier {
    entries: BTreeMap<String, ClassificationEntry>,
}

impl FileClassifier {
    pub fn new(entries: BTreeMap<String, ClassificationEntry>) -> Result<Self, RestifyError> {
        for (key, e) in &entries {
            if !(0.0..=1.0).contains(&e.confidence) {
                return Err(RestifyError::InvalidConfidence {
                    key: key.clone(),
                    confidence: e.confidence,
                });
            }
        }
        Ok(Self { entries })
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let entries: BTreeMap<String, ClassificationEntry> =
            serde_json::from_str(text).map_err(|e| e.to_string())?;
        Self::new(entries).map_err(|e| e.to_string())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Classifier for FileClassifier {
    fn classify(&self, signature: &MethodSignature) -> Classification {
        let key = signature.key();
        match self.entries.get(&key) {
            Some(e) => Classification {
                method_key: key,
                verb: e.verb,
                confidence: e.confidence,
                source: ClassificationSource::ExternalFile,
                fallback: false,
            },
            None => Classification {
                fallback: true,
                ..LexiconClassifier.classify(signature)
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::callgraph::MethodRef;
    use proptest::prelude::*;

    fn sig(class: &str, name: &str, params: &[&str], ret: &str) -> MethodSignature {
        let m = MethodRef::new(class, name, params.iter().map(|s| s.to_string()).collect())
            .unwrap()
            .with_return_type(ret);
        MethodSignature::from_method(&m)
    }

    #[test]
    fn lexicon_examples() {
        let c = classify_http(
            &sig("a.Owner", "getCity", &[], "java.lang.String"),
            &LexiconClassifier,
        );
        assert_eq!((c.verb, c.confidence), (HttpVerb::Get, 1.0));
        let c = classify_http(
            &sig("a.Owner", "deleteOwner", &["int"], "void"),
            &LexiconClassifier,
        );
        assert_eq!((c.verb, c.confidence), (HttpVerb::Delete, 1.0));
        let c = classify_http(
            &sig("a.Visit", "processNewVisit", &["a.Visit"], "void"),
            &LexiconClassifier,
        );
        assert_eq!((c.verb, c.confidence), (HttpVerb::Post, 0.5));
        let c = classify_http(
            &sig("a.Pet", "updatePet", &["a.Pet"], "void"),
            &LexiconClassifier,
        );
        assert_eq!(c.verb, HttpVerb::Put);
    }

    #[test]
    fn file_classifier_and_fallback() {
        let f = FileClassifier::from_json(
            r#"{"a.Owner:getCity()": {"verb": "GET", "confidence": 0.96}}"#,
        )
        .unwrap();
        let c = f.classify(&sig("a.Owner", "getCity", &[], "java.lang.String"));
        assert_eq!(c.source, ClassificationSource::ExternalFile);
        assert_eq!(c.confidence, 0.96);
        assert!(!c.fallback);
        let c = f.classify(&sig("a.Owner", "removePet", &["a.Pet"], "void"));
        assert!(c.fallback);
        assert_eq!(
            (c.verb, c.source),
            (HttpVerb::Delete, ClassificationSource::Lexicon)
        );
    }

    #[test]
    fn file_classifier_validates() {
        assert!(FileClassifier::from_json(r#"{"k": {"verb": "GET", "confidence": 1.5}}"#).is_err());
        assert!(
            FileClassifier::from_json(r#"{"k": {"verb": "PATCH", "confidence": 0.5}}"#).is_err()
        );
    }

    proptest! {
        #[test]
        fn lexicon_is_total(name in "[a-zA-Z_$][a-zA-Z0-9_$]{0,20}") {
            let c = LexiconClassifier.classify(&sig("a.X", &name, &[], "void"));
            prop_assert!(HttpVerb::ALL.contains(&c.verb));
            prop_assert!((0.0..=1.0).contains(&c.confidence));
        }
    }
}
