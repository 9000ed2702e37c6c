use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::RestifyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PosTag {
    Verb,
    Noun,
    Adjective,
    Other,
}

const VERBS: &[&str] = &[
    "get",
    "set",
    "find",
    "fetch",
    "read",
    "list",
    "retrieve",
    "is",
    "has",
    "show",
    "update",
    "replace",
    "modify",
    "change",
    "delete",
    "remove",
    "clear",
    "cancel",
    "create",
    "add",
    "save",
    "insert",
    "process",
    "send",
    "post",
    "put",
    "load",
    "store",
    "build",
    "make",
    "init",
    "initialize",
    "handle",
    "compute",
    "calculate",
    "check",
    "validate",
    "verify",
    "convert",
    "parse",
    "format",
    "render",
    "display",
    "search",
    "query",
    "count",
    "register",
    "edit",
    "apply",
    "execute",
    "run",
    "open",
    "close",
    "start",
    "stop",
    "reset",
    "refresh",
    "submit",
    "accept",
    "reject",
    "approve",
    "assign",
    "attach",
    "detach",
    "bind",
    "populate",
    "persist",
    "merge",
    "sort",
    "filter",
    "map",
    "reduce",
    "collect",
    "copy",
    "move",
    "write",
    "print",
    "log",
    "notify",
    "publish",
    "subscribe",
    "export",
    "import",
    "upload",
    "download",
    "lookup",
    "can",
    "should",
    "do",
    "go",
    "use",
    "call",
    "invoke",
    "perform",
    "prepare",
    "resolve",
    "evict",
    "cache",
    "destroy",
    "schedule",
    "book",
    "generate",
    "transform",
];

const ADJECTIVES: &[&str] = &[
    "new",
    "old",
    "all",
    "last",
    "first",
    "next",
    "previous",
    "active",
    "inactive",
    "valid",
    "invalid",
    "empty",
    "current",
    "default",
    "main",
    "single",
    "multiple",
    "available",
    "enabled",
    "disabled",
    "visible",
    "hidden",
    "closed",
    "pending",
    "recent",
    "full",
    "partial",
    "public",
    "private",
    "internal",
    "external",
    "local",
    "global",
    "unique",
    "max",
    "min",
    "total",
    "initial",
    "final",
];

const OTHERS: &[&str] = &[
    "by", "for", "to", "of", "in", "on", "at", "with", "from", "and", "or", "the", "a", "an", "as",
    "into", "if", "via", "per", "not", "no",
];

/// Lexicon part-of-speech tagger. Unknown words are nouns. Overrides take
/// precedence over the built-in word lists.
#[derive(Clone, Debug, Default)]
pub struct PosTagger {
    overrides: HashMap<String, PosTag>,
}

impl PosTagger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_overrides(overrides: HashMap<String, PosTag>) -> Self {
        let overrides = overrides
            .into_iter()
            .map(|(k, v)| (k.to_lowercase(), v))
            .collect();
        Self { overrides }
    }

    /// Reads a tag file: `{"word": "verb" | "noun" | "adjective" | "other"}`.
    pub fn from_json(text: &str) -> Result<Self, RestifyError> {
        let raw: HashMap<String, String> =
            serde_json::from_str(text).map_err(|e| RestifyError::UnknownTag(e.to_string()))?;
        let mut map = HashMap::new();
        for (word, tag) in raw {
            let tag = match tag.as_str() {
                "verb" => PosTag::Verb,
                "noun" => PosTag::Noun,
                "adjective" => PosTag::Adjective,
                "other" => PosTag::Other,
                _ => return Err(RestifyError::UnknownTag(tag)),
            };
            map.insert(word, tag);
        }
        Ok(Self::with_overrides(map))
    }

    pub fn tag(&self, token: &str) -> PosTag {
        let t = token.to_lowercase();
        if let Some(&tag) = self.overrides.get(&t) {
            return tag;
        }
        if VERBS.contains(&t.as_str()) {
            PosTag::Verb
        } else if ADJECTIVES.contains(&t.as_str()) {
            PosTag::Adjective
        } else if OTHERS.contains(&t.as_str()) {
            PosTag::Other
        } else {
            PosTag::Noun
        }
    }

    pub fn is_verb(&self, token: &str) -> bool {
        self.tag(token) == PosTag::Verb
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicon_tags() {
        let t = PosTagger::new();
        assert_eq!(t.tag("get"), PosTag::Verb);
        assert_eq!(t.tag("city"), PosTag::Noun);
        assert_eq!(t.tag("new"), PosTag::Adjective);
        assert_eq!(t.tag("for"), PosTag::Other);
        assert_eq!(t.tag("Get"), PosTag::Verb);
    }

    #[test]
    fn overrides_win() {
        let t = PosTagger::from_json(r#"{"visit": "verb", "get": "noun"}"#).unwrap();
        assert_eq!(t.tag("visit"), PosTag::Verb);
        assert_eq!(t.tag("get"), PosTag::Noun);
        assert!(PosTagger::from_json(r#"{"x": "pronoun"}"#).is_err());
    }
}
