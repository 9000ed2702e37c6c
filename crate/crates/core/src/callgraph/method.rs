use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use super::CallGraphError;

/// A method of the analyzed program.
///
/// Identity is the key `class_fqn:method_name(param,types)`; the return type
/// does not take part in equality, ordering or hashing.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MethodRef {
    pub class_fqn: String,
    pub method_name: String,
    #[serde(default)]
    pub param_types: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub return_type: Option<String>,
}

impl MethodRef {
    pub fn new(
        class_fqn: impl Into<String>,
        method_name: impl Into<String>,
        param_types: Vec<String>,
    ) -> Result<Self, CallGraphError> {
        let class_fqn = class_fqn.into();
        let method_name = method_name.into();
        if class_fqn.trim().is_empty() || method_name.trim().is_empty() {
            return Err(CallGraphError::InvalidMethod(format!(
                "{class_fqn}:{method_name}"
            )));
        }
        Ok(Self {
            class_fqn,
            method_name,
            param_types,
            return_type: None,
        })
    }

    pub fn with_return_type(mut self, return_type: impl Into<String>) -> Self {
        self.return_type = Some(return_type.into());
        self
    }

    pub fn key(&self) -> String {
        format!(
            "{}:{}({})",
            self.class_fqn,
            self.method_name,
            self.param_types.join(",")
        )
    }

    /// Parses an identity key back into a method reference.
    pub fn parse_key(key: &str) -> Result<Self, CallGraphError> {
        let bad = || CallGraphError::InvalidMethod(key.to_string());
        let (class_fqn, rest) = key.split_once(':').ok_or_else(bad)?;
        let open = rest.find('(').ok_or_else(bad)?;
        let inner = rest[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let params = split_type_list(inner);
        Self::new(class_fqn, &rest[..open], params).map_err(|_| bad())
    }

    pub fn simple_class_name(&self) -> &str {
        simple_type_name(&self.class_fqn)
    }

    /// `return_type method(param_types)`, the text form used for verb
    /// classification. Unknown return types render as `void`.
    pub fn signature_text(&self) -> String {
        format!(
            "{} {}({})",
            self.return_type.as_deref().unwrap_or("void"),
            self.method_name,
            self.param_types.join(", ")
        )
    }

    pub fn is_constructor(&self) -> bool {
        self.method_name == "<init>" || self.method_name == "<clinit>"
    }
}

/// Splits a comma-separated type list, ignoring commas nested in generics.
pub(crate) fn split_type_list(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '<' => {
                depth += 1;
                cur.push(c);
            }
            '>' => {
                depth -= 1;
                cur.push(c);
            }
            ',' if depth == 0 => {
                let t = cur.trim();
                if !t.is_empty() {
                    out.push(t.to_string());
                }
                cur.clear();
            }
            _ => cur.push(c),
        }
    }
    let t = cur.trim();
    if !t.is_empty() {
        out.push(t.to_string());
    }
    out
}

/// Simple name of a (possibly generic, array or nested) type name:
/// `java.util.List<a.Pet>[]` becomes `List`, `a.Outer$Inner` becomes `Inner`.
pub fn simple_type_name(fqn: &str) -> &str {
    let erased = fqn.split('<').next().unwrap_or(fqn);
    let erased = erased.trim_end_matches("[]").trim_end_matches("...");
    let erased = erased.trim();
    let last = erased.rsplit('.').next().unwrap_or(erased);
    last.rsplit('$').next().unwrap_or(last)
}

impl PartialEq for MethodRef {
    fn eq(&self, other: &Self) -> bool {
        self.class_fqn == other.class_fqn
            && self.method_name == other.method_name
            && self.param_types == other.param_types
    }
}

impl Eq for MethodRef {}

impl Hash for MethodRef {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for MethodRef {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MethodRef {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for MethodRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_includes_param_types() {
        let m = MethodRef::new(
            "a.Owner",
            "find",
            vec!["int".into(), "java.lang.String".into()],
        )
        .unwrap();
        assert_eq!(m.key(), "a.Owner:find(int,java.lang.String)");
        let n = MethodRef::new("a.Owner", "find", vec!["int".into()]).unwrap();
        assert_ne!(m, n);
    }

    #[test]
    fn return_type_is_not_identity() {
        let m = MethodRef::new("a.Owner", "getCity", vec![]).unwrap();
        let n = m.clone().with_return_type("java.lang.String");
        assert_eq!(m, n);
    }

    #[test]
    fn rejects_empty_names() {
        assert!(MethodRef::new("", "m", vec![]).is_err());
        assert!(MethodRef::new("a.B", " ", vec![]).is_err());
    }

    #[test]
    fn parse_key_round_trips() {
        let m = MethodRef::new(
            "a.b.Owner",
            "setPets",
            vec!["java.util.Set".into(), "int".into()],
        )
        .unwrap();
        assert_eq!(MethodRef::parse_key(&m.key()).unwrap(), m);
        assert!(MethodRef::parse_key("nonsense").is_err());
        assert!(MethodRef::parse_key("a.B:m(").is_err());
    }

    #[test]
    fn simple_names() {
        assert_eq!(simple_type_name("java.lang.String"), "String");
        assert_eq!(simple_type_name("java.util.List<a.Pet>"), "List");
        assert_eq!(simple_type_name("a.Pet[]"), "Pet");
        assert_eq!(simple_type_name("a.Outer$Inner"), "Inner");
        assert_eq!(simple_type_name("int"), "int");
    }

    #[test]
    fn type_list_respects_generics() {
        assert_eq!(
            split_type_list("java.util.Map<a.K, a.V>, int"),
            vec!["java.util.Map<a.K, a.V>".to_string(), "int".to_string()]
        );
        assert!(split_type_list("  ").is_empty());
    }
}
